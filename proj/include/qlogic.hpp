// Copyright 2026 The qlogic Authors
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

#pragma once

#include "qlogic/error.hpp"
#include "qlogic/numerics.hpp"
#include "qlogic/algebra.hpp"
#include "qlogic/random.hpp"
#include "qlogic/parallel.hpp"
#include "qlogic/sectors.hpp"
#include "qlogic/logic.hpp"
#include "qlogic/states.hpp"
#include "qlogic/io.hpp"
#include "qlogic/scenarios.hpp"
