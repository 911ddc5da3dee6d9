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

#ifndef MASS_API_SERVER_H_
#define MASS_API_SERVER_H_

#include <memory>
#include <string>
#include <vector>

#include "mass/core/error.h"
#include "mass/core/time.h"
#include "mass/notify/notifier.h"
#include "mass/registry/registry.h"
#include "mass/ssc/scheduling_checkup.h"

namespace mass::api {

inline constexpr const char* kSessionHeader = "X-Session-Token";

struct RouteInfo {
  std::string method;
  std::string path;
  // "public", "session", "patient" or "doctor".
  std::string access;
  std::string summary;
};

// Every route the server answers; also served at GET /routes.
const std::vector<RouteInfo>& Routes();

// Engine error -> HTTP status. Total over ErrorCode.
int HttpStatusFor(ErrorCode code);

// HTTP/JSON facade. Handlers hold no mutable state of their own; every
// mutation is delegated to the serialized engine calls.
class ApiServer {
 public:
  ApiServer(ssc::SchedulingCheckup& ssc, registry::Registry& registry,
            notify::Notifier& notifier, const Clock& clock);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  bool IsRunning() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mass::api

#endif  // MASS_API_SERVER_H_
