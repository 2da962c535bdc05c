/*
 * Copyright 2026 The egb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/// \file egb.hpp
/// \brief Umbrella header for the energy group buying simulator.

#pragma once

#include "egb/bargaining.hpp"
#include "egb/commitment.hpp"
#include "egb/core.hpp"
#include "egb/experiment.hpp"
#include "egb/load_sharing.hpp"
#include "egb/rng.hpp"
#include "egb/scenario.hpp"
#include "egb/trading.hpp"
