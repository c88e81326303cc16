// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uavee Authors
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

#ifndef UAVEE_UAVEE_HPP
#define UAVEE_UAVEE_HPP

#include "uavee/antenna.hpp"
#include "uavee/channel.hpp"
#include "uavee/experiments/config.hpp"
#include "uavee/experiments/csv.hpp"
#include "uavee/experiments/runner.hpp"
#include "uavee/geometry.hpp"
#include "uavee/log.hpp"
#include "uavee/ma.hpp"
#include "uavee/optimizer.hpp"
#include "uavee/rng.hpp"

#endif // UAVEE_UAVEE_HPP
