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

// sintpts: command-line front end.
//
// Every subcommand writes one table to stdout, either as CSV with a header row or as JSON
// records (one object per line, every value a string).  Exit status is 0 on success, 2 when a
// theorem's hypotheses fail or an identity check fails, and 1 on bad input.

#include "sintpts/bundle_engine.hpp"
#include "sintpts/conic_torsor.hpp"
#include "sintpts/cubic_pipeline.hpp"
#include "sintpts/density_counting.hpp"
#include "sintpts/model_io.hpp"
#include "sintpts/special_families.hpp"
#include "sintpts/torus_pell.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <set>
#include <string>
#include <vector>

using namespace sintpts;

namespace {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> r) {
        if (r.size() != columns.size()) throw Error("internal: row width does not match the header");
        rows.push_back(std::move(r));
    }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void write_table(const Table& t, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
        out << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
            out << '\n';
        }
        return;
    }
    for (const auto& r : t.rows) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < r.size(); ++i) j[t.columns[i]] = r[i];
        out << j.dump() << '\n';
    }
}

// Constant term first, as in model files.
std::string coeff_list(const IntPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& c : p.coeffs()) s += (s.empty() ? "" : " ") + c.get_str();
    return s;
}

Integer positive(const std::string& text, const std::string& flag) {
    const Integer v = parse_integer(text);
    if (sgn(v) <= 0) throw InputError(flag + " must be positive, got " + text);
    return v;
}

std::size_t positive_size(const std::string& text, const std::string& flag) {
    const Integer v = positive(text, flag);
    if (!v.fits_ulong_p() || v > 1000000) throw InputError(flag + " is too large: " + text);
    return static_cast<std::size_t>(v.get_ui());
}

std::vector<SRational> rational_list(const std::string& text, std::optional<std::size_t> count, const std::string& flag) {
    const Document d = Document::parse("value = " + text, flag);
    return d.rationals("value", count);
}

struct Config {
    std::string input;
    std::string B = "10";
    std::string n = "4";
    std::string S = "inf";
    std::string v = "inf";
    int depth = 2;
    std::string format = "csv";
    unsigned threads = 1;

    std::string D, d, N, seed, conic, P;
    bool fibers = false;
    bool classify = false;
};

Document input_document(const Config& c) {
    if (c.input.empty()) throw InputError("--input is required");
    return Document::load(c.input);
}

// ---------------------------------------------------------------------------

int run_pell(const Config& c, Table& t) {
    const Integer D = parse_integer(c.D);
    const std::size_t n = positive_size(c.n, "--n");
    const Integer N = c.N.empty() ? Integer(1) : parse_integer(c.N);
    t.columns = {"k", "u", "v", "norm"};
    PellSolution seed{1, 0};
    if (!c.seed.empty()) {
        const auto s = rational_list(c.seed, 2, "--seed");
        if (!s[0].is_integer() || !s[1].is_integer()) throw InputError("--seed must be integral");
        seed = {s[0].num(), s[1].num()};
    } else if (N != 1) {
        throw InputError("--seed is required when --N is not 1");
    }
    std::vector<PellSolution> orbit;
    try {
        orbit = orbit_on_torsor(D, N, seed, n);
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    for (std::size_t k = 0; k < orbit.size(); ++k) t.add({std::to_string(k), orbit[k].u.get_str(), orbit[k].v.get_str(), N.get_str()});
    return 0;
}

int run_rank(const Config& c, Table& t) {
    const PlaceSet S = PlaceSet::parse(c.S);
    const SRational d = rational_list(c.d, 1, "--d")[0];
    if (d.is_zero()) throw InputError("--d must be nonzero");
    const TorusForm form = TorusForm::from_discriminant(d);
    t.columns = {"d", "S", "form", "rank"};
    std::string s;
    for (const Place& p : S.places()) s += (s.empty() ? "" : " ") + p.str();
    t.add({d.str(), s, form.str(), std::to_string(torus_rank(form, S))});
    return 0;
}

int run_conic_orbit(const Config& c, Table& t) {
    const PlaceSet S = PlaceSet::parse(c.S);
    const auto k = rational_list(c.conic, 6, "--conic");
    const auto s = rational_list(c.seed, 2, "--seed");
    const std::size_t n = positive_size(c.n, "--n");
    std::optional<AffineConic> conic;
    try {
        conic.emplace(k[0], k[1], k[2], k[3], k[4], k[5]);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    const BoundaryDivisor D = BoundaryDivisor::at_infinity(*conic);
    const OrbitResult r = generate_bisection_case(*conic, D, {s[0], s[1]}, S, n);
    t.columns = {"k", "x", "y", "form", "rank"};
    for (std::size_t i = 0; i < r.points.size(); ++i)
        t.add({std::to_string(i), r.points[i].x.str(), r.points[i].y.str(), r.form.str(), std::to_string(r.rank)});
    return 0;
}

void fiber_rows(const std::vector<FiberReport>& reports, Table& t) {
    t.columns = {"t", "status", "form", "rank", "points", "reason"};
    for (const auto& r : reports)
        t.add({r.t.str(), r.status, r.form, r.form.empty() ? "" : std::to_string(r.rank), std::to_string(r.points.size()), r.reason});
}

int run_bundle(const Config& c, Table& t) {
    const Document doc = input_document(c);
    const PlaceSet S = PlaceSet::parse(c.S);
    const Integer B = positive(c.B, "--B");
    const std::size_t n = positive_size(c.n, "--n");
    std::vector<FiberReport> reports;
    bool p1 = false;
    if (doc.text("kind") == "p1xp1") {
        const P1xP1Model m = load_p1xp1(doc);
        reports = p1xp1_generate(m.D, m.ruling, S, m.v, B, n, c.threads);
        p1 = true;
    } else {
        ConicBundleModel m = load_bundle(doc);
        PelldenseOptions opt;
        opt.threads = c.threads;
        reports = pelldense_generate(m, S, B, n, opt);
    }
    if (c.fibers) {
        fiber_rows(reports, t);
        return 0;
    }
    t.columns = p1 ? std::vector<std::string>{"t", "k", "x0", "x1", "y0", "y1"} : std::vector<std::string>{"t", "k", "x", "y"};
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.lifted.size(); ++i) {
            std::vector<std::string> row{r.t.str(), std::to_string(i)};
            const std::size_t width = p1 ? 4 : 2;
            for (std::size_t j = 0; j < width; ++j) row.push_back(r.lifted[i][j].str());
            t.add(std::move(row));
        }
    }
    return 0;
}

CubicSurfaceModel cubic_model(const Config& c, bool override_place) {
    RawCubic raw = load_cubic(input_document(c));
    raw.S = raw.S.united(PlaceSet::parse(c.S));
    if (override_place) raw.v = Place::parse(c.v);
    return normalize_to_paper_coordinates(raw);
}

int run_cubic(const Config& c, Table& t) {
    const CubicSurfaceModel m = cubic_model(c, false);
    const Integer B = positive(c.B, "--B");
    const std::size_t n = positive_size(c.n, "--n");
    CubicOptions opt;
    opt.threads = c.threads;
    const CubicGeneration G = generate_cubic_points(m, m.S, B, n, opt);
    if (c.fibers) {
        t.columns = {"fiber", "origin", "s", "slope", "status", "form", "rank", "points", "reason"};
        for (std::size_t i = 0; i < G.fibers.size(); ++i) {
            const auto& f = G.fibers[i];
            const auto& r = f.report;
            t.add({std::to_string(i), f.origin, f.s ? f.s->str() : "", f.slope, r.status, r.form,
                   r.form.empty() ? "" : std::to_string(r.rank), std::to_string(f.points_original.size()), r.reason});
        }
        return 0;
    }
    t.columns = {"fiber", "origin", "slope", "w", "x", "y", "z"};
    std::set<std::vector<SRational>> seen;
    for (std::size_t i = 0; i < G.fibers.size(); ++i) {
        const auto& f = G.fibers[i];
        for (const auto& p : f.points_original) {
            if (!seen.insert(p).second) continue;
            t.add({std::to_string(i), f.origin, f.slope, p[0].str(), p[1].str(), p[2].str(), p[3].str()});
        }
    }
    return 0;
}

int run_check_conditions(const Config& c, Table& t) {
    const CubicSurfaceModel m = cubic_model(c, true);
    const ConditionReport ga = check_GA(m);
    const ConditionReport aa = check_AA(m, m.S, m.v);
    t.columns = {"condition", "status", "detail"};
    for (const std::string& name : condition_names()) {
        const ConditionReport& src = name.rfind("AA", 0) == 0 ? aa : ga;
        auto it = src.conditions.find(name);
        if (it == src.conditions.end()) {
            t.add({name, "Undetermined", "not evaluated"});
        } else {
            t.add({name, status_str(it->second.status), it->second.detail});
        }
    }
    t.add({"smooth", ga.surface_smooth ? "Holds" : "Fails", ""});
    t.add({"flex", aa.flex ? "Holds" : "Fails", ""});
    if (aa.aa2d) {
        const auto& w = *aa.aa2d;
        t.add({"AA2d-witness", "", "a=" + w.a.str() + " c=" + w.c.str() + " b=" + w.b.str() + " disc=" + w.disc().str()});
    }
    ConditionReport all = ga;
    for (const auto& [k, v] : aa.conditions) all.conditions[k] = v;
    t.add({"applicable", all.applicable() ? "Holds" : "Fails", all.applicable() ? "" : [&] {
               std::string f;
               for (const auto& s : all.failing()) f += (f.empty() ? "" : " ") + s;
               return f;
           }()});
    return all.applicable() ? 0 : 2;
}

DoubleCoverModel cover_model(const Config& c) {
    if (!c.P.empty()) {
        std::vector<Integer> coeffs;
        for (const auto& q : rational_list(c.P, std::nullopt, "--P")) {
            if (!q.is_integer()) throw InputError("--P must be integral");
            coeffs.push_back(q.num());
        }
        return DoubleCoverModel(IntPolynomial(coeffs));
    }
    return load_cover(input_document(c));
}

int run_density(const Config& c, Table& t) {
    const DoubleCoverModel m = cover_model(c);
    const PlaceSet S = PlaceSet::parse(c.S);
    if (c.classify) {
        t.columns = {"place", "class", "M", "detail"};
        for (const Place& p : S.places()) {
            const MuClassification k = p.is_infinite() ? mu_classify_real(m) : mu_classify_local(m, p.prime());
            t.add({p.str(), mu_class_str(k.kind), k.M.get_str(), k.detail});
        }
        return 0;
    }
    const Place v = Place::parse(c.v);
    if (!v.is_infinite()) throw InputError("density: counting is implemented for v = inf only");
    const Integer B = positive(c.B, "--B");
    std::vector<Integer> Bs;
    for (Integer p = 10; p < B; p *= 10) Bs.push_back(p);
    Bs.push_back(B);
    t.columns = {"B", "chi", "chi_id", "omega", "mu_estimate", "ratio"};
    for (const CountReport& r : ratio_report(m, Bs, S, c.threads))
        t.add({r.B.get_str(), r.chi.get_str(), r.chi_id.get_str(), r.omega.get_str(), r.mu_estimate.str(), r.ratio ? r.ratio->str() : ""});
    return 0;
}

int run_markov(const Config& c, Table& t) {
    t.columns = {"x", "y", "z", "distance"};
    for (const auto& [m, d] : markov_distances(c.depth)) t.add({m.x.get_str(), m.y.get_str(), m.z.get_str(), std::to_string(d)});
    return 0;
}

int run_lehmer(const Config& c, Table& t) {
    const std::size_t n = positive_size(c.n, "--n");
    const LehmerRun run = lehmer_sequence(static_cast<int>(n));
    t.columns = {"n", "x", "y", "z", "identity"};
    for (std::size_t i = 0; i < run.members.size(); ++i) {
        const auto& m = run.members[i];
        t.add({std::to_string(i), coeff_list(m.x), coeff_list(m.y), coeff_list(m.z), "Holds"});
    }
    if (run.failed_index) {
        t.add({std::to_string(*run.failed_index), "", "", "", "Fails: residual " + coeff_list(run.residual)});
        std::cerr << "lehmer: member " << *run.failed_index << " violates x^3 + y^3 + z^3 = 1; residual " << run.residual.str() << '\n';
        return 2;
    }
    return 0;
}

int run_norm_scheme(const Config& c, Table& t) {
    const std::size_t n = positive_size(c.n, "--n");
    const IntPolynomial d = norm_scheme_d();
    t.columns = {"k", "u", "v", "identity"};
    const auto powers = norm_scheme_powers(n);
    for (std::size_t k = 0; k < powers.size(); ++k) {
        const auto& [u, v] = powers[k];
        t.add({std::to_string(k), coeff_list(u), coeff_list(v), verify_norm_identity(u, v, d) ? "Holds" : "Fails"});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral points on log K3 surfaces: exact enumeration tools", "sintpts"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* s) {
        s->add_option("--format", cfg.format, "csv or records")->check(CLI::IsMember({"csv", "records"}));
    };
    auto places = [&](CLI::App* s) { s->add_option("--S", cfg.S, "places, e.g. inf,2,3"); };
    auto bounds = [&](CLI::App* s) {
        s->add_option("--B", cfg.B, "height bound");
        s->add_option("--n", cfg.n, "orbit length per fiber");
        s->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    };

    std::map<std::string, int (*)(const Config&, Table&)> handlers;
    auto sub = [&](const std::string& name, const std::string& help, int (*fn)(const Config&, Table&)) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        handlers[name] = fn;
        return s;
    };

    {
        auto* s = sub("pell", "orbit of u^2 - D v^2 = N under the fundamental unit", run_pell);
        s->add_option("--D", cfg.D, "positive nonsquare D")->required();
        s->add_option("--N", cfg.N, "norm (default 1)");
        s->add_option("--seed", cfg.seed, "\"u v\" solving the equation");
        s->add_option("--n", cfg.n, "orbit length");
    }
    {
        auto* s = sub("rank", "S-rank of the norm-one torus of Q(sqrt d)", run_rank);
        s->add_option("--d", cfg.d, "nonzero rational d")->required();
        places(s);
    }
    {
        auto* s = sub("conic-orbit", "S-integral orbit on an affine conic minus its points at infinity", run_conic_orbit);
        s->add_option("--conic", cfg.conic, "\"A B C D E F\"")->required();
        s->add_option("--seed", cfg.seed, "\"x y\" on the conic")->required();
        s->add_option("--n", cfg.n, "orbit length");
        places(s);
    }
    {
        auto* s = sub("bundle", "integral points on a conic bundle or a (2,2) divisor complement", run_bundle);
        s->add_option("--input", cfg.input, "bundle or p1xp1 model")->required();
        s->add_flag("--fibers", cfg.fibers, "one row per fiber instead of per point");
        places(s);
        bounds(s);
    }
    {
        auto* s = sub("cubic", "integral points on a cubic surface minus a hyperplane section", run_cubic);
        s->add_option("--input", cfg.input, "cubic model")->required();
        s->add_flag("--fibers", cfg.fibers, "one row per fiber instead of per point");
        places(s);
        bounds(s);
    }
    {
        auto* s = sub("check-conditions", "geometric and arithmetic hypotheses for a cubic model", run_check_conditions);
        s->add_option("--input", cfg.input, "cubic model")->required();
        s->add_option("--v", cfg.v, "marked place");
        places(s);
    }
    {
        auto* s = sub("density", "counts for the double cover y^2 = P(z)", run_density);
        s->add_option("--input", cfg.input, "cover model");
        s->add_option("--P", cfg.P, "coefficients of P, constant term first");
        s->add_option("--v", cfg.v, "place of the local condition");
        s->add_flag("--classify", cfg.classify, "classify the limiting density at each place of S");
        places(s);
        bounds(s);
    }
    {
        auto* s = sub("markov", "Markov triples within a number of Vieta moves", run_markov);
        s->add_option("--depth", cfg.depth, "move count, 0..12");
    }
    {
        auto* s = sub("lehmer", "polynomial solutions of x^3 + y^3 + z^3 = 1 by the Lehmer recursion", run_lehmer);
        s->add_option("--n", cfg.n, "last index");
    }
    {
        auto* s = sub("norm-scheme", "powers of the section of u^2 - 3(108t^6 - 1) v^2 = 1", run_norm_scheme);
        s->add_option("--n", cfg.n, "number of powers");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Table table;
    int status = 0;
    try {
        status = handlers.at(name)(cfg, table);
    } catch (const ConditionFailure& e) {
        std::cerr << "sintpts " << name << ": " << e.what() << '\n';
        return 2;
    } catch (const IdentityError& e) {
        std::cerr << "sintpts " << name << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sintpts " << name << ": " << e.what() << '\n';
        return 1;
    }
    write_table(table, cfg.format, std::cout);
    return status;
}
