//------------------------------------------------------------------------------
//
//   Copyright 2026 The alphadiv Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "alphadiv/ar1.hpp"
#include "alphadiv/bandwidth.hpp"
#include "alphadiv/density.hpp"
#include "alphadiv/divergence.hpp"
#include "alphadiv/experiment.hpp"
#include "alphadiv/inference.hpp"
#include "alphadiv/kde.hpp"
#include "alphadiv/kernel.hpp"
#include "alphadiv/model_spec.hpp"
#include "alphadiv/quadrature.hpp"
#include "alphadiv/rng.hpp"
#include "alphadiv/sample.hpp"
#include "alphadiv/stats.hpp"
