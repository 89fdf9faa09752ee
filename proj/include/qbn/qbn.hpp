// Copyright 2026 The QBN Compiler Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "qbn/angles.hpp"
#include "qbn/circuit.hpp"
#include "qbn/compiler.hpp"
#include "qbn/document.hpp"
#include "qbn/error.hpp"
#include "qbn/fixtures.hpp"
#include "qbn/network.hpp"
#include "qbn/oracle.hpp"
#include "qbn/qasm.hpp"
#include "qbn/simulator.hpp"
#include "qbn/stats.hpp"
