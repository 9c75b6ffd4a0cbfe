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

// Integral solutions of x^3 + y^3 + z^3 = 1 from the conic fibration through the line
// x + y = z - w = 0, printed fiber by fiber.

#include "sintpts/cubic_pipeline.hpp"

#include <iostream>

using namespace sintpts;

int main(int argc, char** argv) {
    const long bound = argc > 1 ? std::stol(argv[1]) : 6;
    const std::size_t per_fiber = argc > 2 ? std::stoul(argv[2]) : 3;

    RawCubic r;
    for (auto& c : r.coefficients) c = SRational(0);
    r.coefficients[0] = SRational(-1);  // w^3
    r.coefficients[10] = SRational(1);  // x^3
    r.coefficients[16] = SRational(1);  // y^3
    r.coefficients[19] = SRational(1);  // z^3
    r.boundary = {SRational(1), SRational(0), SRational(0), SRational(0)};
    r.line = {{{SRational(1), SRational(0), SRational(0), SRational(-1)}, {SRational(0), SRational(1), SRational(1), SRational(0)}}};

    const CubicSurfaceModel m = normalize_to_paper_coordinates(r);
    std::cout << "normalized equation: " << m.F.str({"W", "X", "Y", "Z"}) << "\n\n";

    auto cube = [](const SRational& q) { return (sgn(q.num()) < 0 ? "(" + q.str() + ")" : q.str()) + "^3"; };
    const CubicGeneration g = generate_cubic_points(m, PlaceSet{}, Integer(bound), per_fiber);
    for (const auto& f : g.fibers) {
        if (f.points_original.empty()) continue;
        std::cout << "plane z/x = " << f.slope << "  (torus " << f.report.form << ")\n";
        for (const auto& p : f.points_original) std::cout << "  " << cube(p[1]) << " + " << cube(p[2]) << " + " << cube(p[3]) << " = 1\n";
    }
    std::cout << '\n' << g.points.size() << " points on " << g.distinct_fibers() << " fibers\n";
}
