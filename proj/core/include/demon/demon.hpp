// Copyright 2026 The demon-fridge Authors
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

// demon.hpp — umbrella header for the core library

#pragma once

#include "demon/analysis.hpp"
#include "demon/dynamics.hpp"
#include "demon/errors.hpp"
#include "demon/fock.hpp"
#include "demon/linalg.hpp"
#include "demon/oracle.hpp"
#include "demon/reservoir.hpp"
#include "demon/rng.hpp"
#include "demon/trajectory.hpp"
