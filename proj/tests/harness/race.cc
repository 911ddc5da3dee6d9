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

#include <httplib.h>

#include <latch>
#include <thread>

#include <fmt/format.h>

#include "../test_support.h"
#include "harness.h"
#include "mass/api/server.h"
#include "mass/notify/notifier.h"
#include "mass/ssc/scheduling_checkup.h"

namespace mass::harness {

RaceStats RaceHoldsOverHttp(int rounds) {
  auto reg = testing::MakeRegistry();
  reg->AddSpecialty({SpecialtyId("cardiology"), "Cardiology"});
  reg->UpsertDoctor(testing::Weekday("d1", "cardiology", 8, 18));
  notify::Notifier notifier;
  ssc::SchedulingCheckup ssc(*reg, notifier);
  ssc.MaterializeCalendar(testing::TestDay(), 5);
  ManualClock clock(testing::At(6));

  std::string tokens[2];
  for (int i = 0; i < 2; ++i) {
    std::string user = fmt::format("racer{}", i);
    reg->RegisterUser(user, "correct-horse", clock.Now());
    tokens[i] = reg->Authenticate(user, "correct-horse", clock.Now()).token;
  }

  api::ApiServer server(ssc, *reg, notifier, clock);
  int port = server.BindToAnyPort("127.0.0.1");
  std::thread listener([&] { server.ListenAfterBind(); });
  while (!server.IsRunning()) std::this_thread::sleep_for(std::chrono::milliseconds(1));

  auto slots = ssc.EstablishAvailable(DoctorId("d1"),
                                      {testing::At(0), testing::At(0) + std::chrono::days(5)});
  RaceStats stats;
  httplib::Client clients[2] = {httplib::Client("127.0.0.1", port),
                                httplib::Client("127.0.0.1", port)};
  for (auto& c : clients) {
    c.set_keep_alive(true);
    c.set_tcp_nodelay(true);
    c.Get("/routes");  // open the connection before the first race
  }

  for (int round = 0; round < rounds && round < static_cast<int>(slots.size()); ++round) {
    std::string path = fmt::format("/slots/{}/hold", slots[round].id.str());
    int status[2] = {0, 0};
    std::latch start(2);
    auto racer = [&](int i) {
      httplib::Headers headers{{api::kSessionHeader, tokens[i]}};
      start.arrive_and_wait();
      auto res = clients[i].Post(path, headers, "{}", "application/json");
      status[i] = res ? res->status : -1;
    };
    std::thread a(racer, 0);
    std::thread b(racer, 1);
    a.join();
    b.join();

    ++stats.rounds;
    for (int s : status) {
      if (s == 200) {
        ++stats.ok;
      } else if (s == 409) {
        ++stats.conflict;
      } else {
        ++stats.other;
      }
    }
    bool one_winner = (status[0] == 200 && status[1] == 409) ||
                      (status[0] == 409 && status[1] == 200);
    if (one_winner) {
      ++stats.exactly_one_winner;
    } else if (stats.first_anomaly.empty()) {
      stats.first_anomaly = fmt::format("round {}: {} and {}", round, status[0], status[1]);
    }
  }

  // Close the keep-alive sockets first so the server does not wait them out.
  for (auto& c : clients) c.stop();
  server.Stop();
  listener.join();
  return stats;
}

}  // namespace mass::harness
