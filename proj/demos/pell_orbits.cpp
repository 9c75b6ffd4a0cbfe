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

// Fundamental units and the first few powers for small D, with S-ranks of the norm-one torus.

#include "sintpts/torus_pell.hpp"

#include <iostream>

using namespace sintpts;

int main() {
    for (long d : {2, 3, 5, 7, 13, 61, 109}) {
        const Integer D(d);
        const auto orbit = orbit_on_torsor(D, Integer(1), PellSolution{1, 0}, 4);
        std::cout << "D = " << d << '\n';
        for (std::size_t k = 1; k < orbit.size(); ++k)
            std::cout << "  eps^" << k << " = " << orbit[k].u.get_str() << " + " << orbit[k].v.get_str() << " sqrt(" << d << ")\n";
        std::cout << "  rank over Z[1/2, 1/3, 1/5, 1/7]: " << rank_nonsplit(SRational(D), PlaceSet{2, 3, 5, 7}) << '\n';
    }
}
