// Copyright 2026 The MASS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASS_NOTIFY_SINKS_H_
#define MASS_NOTIFY_SINKS_H_

#include <atomic>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mass/notify/notifier.h"

namespace mass::notify {

// Wire shape shared by the webhook sink and the HTTP inbox:
// {id, kind, recipient, due_at, payload}. Broadcasts carry
// recipient "broadcast".
nlohmann::json ToJson(const Notification& n);

// Keeps every delivered notification in memory.
class InboxSink final : public NotificationSink {
 public:
  void Deliver(const Notification& n) override;
  std::vector<Notification> Delivered() const;

 private:
  mutable std::mutex mu_;
  std::vector<Notification> delivered_;
};

// One JSON object per line.
class LogSink final : public NotificationSink {
 public:
  explicit LogSink(std::ostream& out) : out_(out) {}
  void Deliver(const Notification& n) override;

 private:
  std::mutex mu_;
  std::ostream& out_;
};

// POSTs each notification as JSON to `url` (http://host:port/path).
// Failed deliveries are counted, not retried.
class WebhookSink final : public NotificationSink {
 public:
  explicit WebhookSink(const std::string& url);
  void Deliver(const Notification& n) override;
  size_t failures() const { return failures_.load(); }

 private:
  std::string origin_;
  std::string path_;
  std::atomic<size_t> failures_{0};
};

}  // namespace mass::notify

#endif  // MASS_NOTIFY_SINKS_H_
