/*
   Copyright 2026 The ppvgal Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Umbrella header for the whole library.

#include "ppvgal/diff_module.hpp"
#include "ppvgal/expr.hpp"
#include "ppvgal/field.hpp"
#include "ppvgal/galois.hpp"
#include "ppvgal/io.hpp"
#include "ppvgal/kovacic.hpp"
#include "ppvgal/matrix.hpp"
#include "ppvgal/op_matrix.hpp"
#include "ppvgal/ore.hpp"
#include "ppvgal/pipeline.hpp"
#include "ppvgal/rat_solve.hpp"
#include "ppvgal/rep_analysis.hpp"
