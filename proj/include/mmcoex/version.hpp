// SPDX-License-Identifier: Apache-2.0
//
// mmcoex - simulation library for in-band coexistence of a mmWave radar
// and a mmWave MIMO communication system
// Copyright (C) 2026 mmcoex contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMCOEX_VERSION_HPP
#define MMCOEX_VERSION_HPP

namespace mmcoex
{

inline constexpr const char* kVersion = "0.1.0";

// Schema tag of the canonical config file format; bumped on any
// incompatible change to the key set or value syntax.
inline constexpr const char* kConfigSchema = "mmcoex-config-v1";

} // namespace mmcoex

#endif
