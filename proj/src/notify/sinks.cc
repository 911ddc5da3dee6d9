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

#include "mass/notify/sinks.h"

#include <httplib.h>

#include "mass/core/error.h"

namespace mass::notify {

using nlohmann::json;

json ToJson(const Notification& n) {
  json payload = json::object();
  const Payload& p = n.payload;
  if (p.slot) payload["slot_id"] = p.slot->str();
  if (p.doctor) payload["doctor_id"] = p.doctor->str();
  if (p.slot_start) payload["slot_start"] = FormatRfc3339(*p.slot_start);
  if (p.appointment) payload["appointment_id"] = p.appointment->str();
  if (p.cause) payload["cause"] = CauseName(*p.cause);
  if (p.ticket) payload["ticket_id"] = p.ticket->str();
  if (p.offer_expires_at) payload["offer_expires_at"] = FormatRfc3339(*p.offer_expires_at);
  if (p.request) payload["request_id"] = p.request->str();
  if (p.lead_minutes) payload["lead_minutes"] = *p.lead_minutes;
  return json{{"id", n.id.str()},
              {"kind", KindName(n.kind)},
              {"recipient", n.recipient ? n.recipient->str() : "broadcast"},
              {"due_at", FormatRfc3339(n.due_at)},
              {"payload", std::move(payload)}};
}

void InboxSink::Deliver(const Notification& n) {
  std::lock_guard lock(mu_);
  delivered_.push_back(n);
}

std::vector<Notification> InboxSink::Delivered() const {
  std::lock_guard lock(mu_);
  return delivered_;
}

void LogSink::Deliver(const Notification& n) {
  std::lock_guard lock(mu_);
  out_ << ToJson(n).dump() << '\n';
  out_.flush();
}

WebhookSink::WebhookSink(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kValidation, "webhook url must start with http://");
  }
  auto slash = url.find('/', kScheme.size());
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

void WebhookSink::Deliver(const Notification& n) {
  httplib::Client client(origin_);
  client.set_connection_timeout(2);
  client.set_read_timeout(2);
  auto res = client.Post(path_, ToJson(n).dump(), "application/json");
  if (!res || res->status / 100 != 2) ++failures_;
}

}  // namespace mass::notify
