// Copyright 2026 The valgraph Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VALGRAPH_VALGRAPH_HPP_
#define VALGRAPH_VALGRAPH_HPP_

#include "valgraph/baseline.hpp"
#include "valgraph/errors.hpp"
#include "valgraph/inference.hpp"
#include "valgraph/observation.hpp"
#include "valgraph/posterior.hpp"
#include "valgraph/report.hpp"
#include "valgraph/scenario_io.hpp"
#include "valgraph/value_engine.hpp"
#include "valgraph/world_model.hpp"

#endif  // VALGRAPH_VALGRAPH_HPP_
