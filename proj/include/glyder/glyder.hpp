// Copyright 2026 The GLyDER Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header: the full library.

#pragma once

#include "glyder/estimators.hpp"      // IWYU pragma: export
#include "glyder/harness/config.hpp"  // IWYU pragma: export
#include "glyder/harness/io.hpp"      // IWYU pragma: export
#include "glyder/harness/plot.hpp"    // IWYU pragma: export
#include "glyder/harness/run.hpp"     // IWYU pragma: export
#include "glyder/harness/sweep.hpp"   // IWYU pragma: export
#include "glyder/harness/verify.hpp"  // IWYU pragma: export
#include "glyder/optimizers.hpp"      // IWYU pragma: export
#include "glyder/problems.hpp"        // IWYU pragma: export
#include "glyder/rng.hpp"             // IWYU pragma: export
#include "glyder/schedulers.hpp"      // IWYU pragma: export
#include "glyder/sharding.hpp"        // IWYU pragma: export
#include "glyder/smoothness.hpp"      // IWYU pragma: export
#include "glyder/stats.hpp"           // IWYU pragma: export
#include "glyder/vec.hpp"             // IWYU pragma: export
