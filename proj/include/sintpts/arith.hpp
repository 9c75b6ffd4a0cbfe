/*
   Copyright 2026 The sintpts authors

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

#ifndef SINTPTS_ARITH_HPP
#define SINTPTS_ARITH_HPP

#include "sintpts/arith/groebner.hpp"
#include "sintpts/arith/integer.hpp"
#include "sintpts/arith/linalg.hpp"
#include "sintpts/arith/mpoly.hpp"
#include "sintpts/arith/place.hpp"
#include "sintpts/arith/polynomial.hpp"
#include "sintpts/arith/rational.hpp"
#include "sintpts/arith/valuation.hpp"

#endif
