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

#ifndef MMCOEX_MMCOEX_HPP
#define MMCOEX_MMCOEX_HPP

// Umbrella header pulling in the whole library.

#include "mmcoex/array.hpp"
#include "mmcoex/beamforming.hpp"
#include "mmcoex/channel.hpp"
#include "mmcoex/config.hpp"
#include "mmcoex/io.hpp"
#include "mmcoex/metrics.hpp"
#include "mmcoex/rng.hpp"
#include "mmcoex/sim.hpp"
#include "mmcoex/version.hpp"

#endif
