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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mass/cli/cli.h"

namespace mass::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  CliTest() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("mass-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::setenv("MASS_DATA_DIR", (dir_ / "data").c_str(), 1);
  }
  ~CliTest() override {
    ::unsetenv("MASS_DATA_DIR");
    fs::remove_all(dir_);
  }

  Outcome Run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = RunCli(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string Write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string Fixture(const std::string& name) {
    return std::string(MASS_FIXTURES_DIR) + "/" + name;
  }

  static int Lines(const std::string& text) {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  }

  fs::path dir_;
};

constexpr const char* kMondayDoctor = R"([{
  "id": "d-early", "name": "Dr. Early", "specialty": "cardiology",
  "working_hours": [{"day": "mon", "start": "08:00", "end": "09:00"}]
}])";

TEST_F(CliTest, SeedCountsRecords) {
  auto r = Run({"seed", Fixture("doctors.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("specialties: 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("doctors: 3"), std::string::npos);
  EXPECT_NE(r.out.find("accounts: 2"), std::string::npos);
  // Re-seeding updates doctors in place and creates no new accounts.
  auto again = Run({"seed", Fixture("doctors.json")});
  EXPECT_EQ(again.code, kExitOk) << again.err;
  EXPECT_EQ(again.out, "specialties: 2\ndoctors: 3\naccounts: 0\n");
}

TEST_F(CliTest, SeedEmptyFixture) {
  auto r = Run({"seed", Write("empty.json", "  \n")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "specialties: 0\ndoctors: 0\naccounts: 0\n");
}

TEST_F(CliTest, SeedRejectsBadFieldByName) {
  auto r = Run({"seed", Write("bad.json", R"([{"id": "d1", "name": "X", "specialty": "c",
    "working_hours": [{"day": "mon", "start": "08:30", "end": "09:00"}]}])")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("working_hours[0].start"), std::string::npos) << r.err;

  auto typed = Run({"seed", Write("typed.json", R"([{"id": 7}])")});
  EXPECT_EQ(typed.code, kExitValidation);
  EXPECT_NE(typed.err.find("id"), std::string::npos) << typed.err;
}

TEST_F(CliTest, SeedParseErrorNamesTheLine) {
  auto r = Run({"seed", Write("broken.json", "[\n  {\"id\": \"d1\",\n  oops\n]")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, SeedMissingFileIsIo) {
  auto r = Run({"seed", (dir_ / "absent.json").string()});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST_F(CliTest, SlotsDefaultTemplate) {
  ASSERT_EQ(Run({"seed", Write("d.json", kMondayDoctor)}).code, kExitOk);
  auto r = Run({"slots", "--doctor", "d-early", "--date", "2030-01-07"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  // header + 6 slots + footer
  EXPECT_EQ(Lines(r.out), 8) << r.out;
  EXPECT_NE(r.out.find("6 slots"), std::string::npos);
  EXPECT_NE(r.out.find("wave 1/2"), std::string::npos);
  EXPECT_NE(r.out.find("wave 2/2"), std::string::npos);

  auto csv = Run({"--format", "csv", "slots", "--doctor", "d-early", "--date", "2030-01-07"});
  ASSERT_EQ(csv.code, kExitOk) << csv.err;
  EXPECT_EQ(Lines(csv.out), 7);
  EXPECT_EQ(csv.out.rfind("slot_id,start,end,hour_position,wave_index\n", 0), 0u);
  EXPECT_NE(csv.out.find("d-early-203001070800-0,08:00,08:10,0,0"), std::string::npos)
      << csv.out;
  EXPECT_NE(csv.out.find("d-early-203001070800-1,08:00,08:10,0,1"), std::string::npos);
}

TEST_F(CliTest, SlotsWiderCatchupLeavesFewerSlots) {
  ASSERT_EQ(Run({"seed", Write("d.json", kMondayDoctor)}).code, kExitOk);
  auto r = Run({"--format", "csv", "slots", "--doctor", "d-early", "--date", "2030-01-07",
                "--catchup", "20"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Lines(r.out), 1 + 5) << r.out;
  auto off_duty = Run({"slots", "--doctor", "d-early", "--date", "2030-01-08"});
  EXPECT_EQ(off_duty.code, kExitOk);
  EXPECT_NE(off_duty.out.find("0 slots"), std::string::npos);
}

TEST_F(CliTest, SlotsErrors) {
  ASSERT_EQ(Run({"seed", Write("d.json", kMondayDoctor)}).code, kExitOk);
  auto unknown = Run({"slots", "--doctor", "nobody", "--date", "2030-01-07"});
  EXPECT_EQ(unknown.code, kExitValidation);
  EXPECT_NE(unknown.err.find("UNKNOWN_DOCTOR"), std::string::npos);
  EXPECT_EQ(Run({"slots", "--doctor", "d-early", "--date", "07/01/2030"}).code,
            kExitValidation);
  EXPECT_EQ(Run({"slots", "--doctor", "d-early", "--date", "2030-01-07", "--wave-size", "1"})
                .code,
            kExitValidation);
  EXPECT_EQ(Run({"slots", "--doctor", "d-early"}).code, kExitValidation);
  EXPECT_EQ(Run({"no-such-command"}).code, kExitValidation);
}

TEST_F(CliTest, SimulateAndCompareDeskExample) {
  auto one = Run({"simulate", Fixture("wave_desk.json")});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_NE(one.out.find("8.33"), std::string::npos) << one.out;

  auto cmp = Run({"--format", "csv", "compare", Fixture("fcfs_desk.json"),
                  Fixture("wave_desk.json")});
  ASSERT_EQ(cmp.code, kExitOk) << cmp.err;
  std::istringstream lines(cmp.out);
  std::string header, base, treat;
  std::getline(lines, header);
  std::getline(lines, base);
  std::getline(lines, treat);
  EXPECT_EQ(base.rfind("fcfs,18,85.00,85.00,160,170,", 0), 0u) << base;
  EXPECT_EQ(treat.rfind("modified_wave,18,8.33,10.00,10,10,", 0), 0u) << treat;
}

TEST_F(CliTest, CompareIsDeterministicAndSeedOverrides) {
  std::vector<std::string> args{"compare", Fixture("fcfs_stochastic.json"),
                                Fixture("wave_stochastic.json"), "--reps", "20"};
  auto a = Run(args);
  auto b = Run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  args.insert(args.begin(), {"--seed", "7"});
  auto c = Run(args);
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_NE(a.out, c.out);
}

TEST_F(CliTest, CompareErrors) {
  EXPECT_EQ(Run({"compare", Fixture("fcfs_desk.json"), (dir_ / "none.json").string()}).code,
            kExitIo);
  EXPECT_EQ(Run({"compare", Fixture("fcfs_desk.json"), Fixture("wave_desk.json"), "--reps", "0"})
                .code,
            kExitValidation);
  auto bad = Run({"simulate", Write("bad.json", R"({"policy": {"kind": "lottery"}})")});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_EQ(Run({"simulate"}).code, kExitValidation);
}

}  // namespace
}  // namespace mass::cli
