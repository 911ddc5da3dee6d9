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

#ifndef MASS_REGISTRY_CREDENTIALS_H_
#define MASS_REGISTRY_CREDENTIALS_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace mass::registry {

// Argon2id cost parameters (libsodium crypto_pwhash).
struct HashParams {
  unsigned long long ops_limit;
  std::size_t mem_limit;

  static HashParams Interactive();
  // Minimum cost; for tests only.
  static HashParams Minimal();
};

inline constexpr std::size_t kMinCredentialLength = 8;

// Salted verifier string; embeds its own parameters and salt.
std::string HashCredential(std::string_view credential, const HashParams& params);
bool VerifyCredential(const std::string& verifier, std::string_view credential);

// 32 random bytes, hex encoded.
std::string RandomToken();

}  // namespace mass::registry

#endif  // MASS_REGISTRY_CREDENTIALS_H_
