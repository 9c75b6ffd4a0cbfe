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

#ifndef SINTPTS_MODEL_IO_HPP
#define SINTPTS_MODEL_IO_HPP

// Flat key-value model documents.
//
//   # comment
//   kind     = cubic
//   cubic    = 0 0 0 ... 1        (values separated by spaces or commas)
//
// Every value is an integer, a rational num/den, or the place name inf.  Keys may repeat only
// where noted (seed).

#include "sintpts/bundle_engine.hpp"
#include "sintpts/cubic_pipeline.hpp"
#include "sintpts/density_counting.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sintpts {

struct DocumentEntry {
    std::vector<std::string> values;
    int line = 0;
};

class Document {
  public:
    static Document parse(const std::string& text, const std::string& source = "<input>") {
        Document d;
        d.source_ = source;
        std::istringstream in(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
            const auto eq = raw.find('=');
            if (eq == std::string::npos) throw InputError(d.where(lineno) + ": expected key = values");
            std::string key = trim(raw.substr(0, eq));
            if (key.empty() || key.find_first_of(" \t") != std::string::npos)
                throw InputError(d.where(lineno) + ": malformed key '" + key + "'");
            DocumentEntry e;
            e.line = lineno;
            std::string rest = raw.substr(eq + 1);
            for (char& c : rest) {
                if (c == ',' || c == '\t' || c == '\r') c = ' ';
            }
            std::istringstream vs(rest);
            for (std::string v; vs >> v;) e.values.push_back(v);
            d.entries_[key].push_back(std::move(e));
        }
        return d;
    }

    static Document load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw InputError("cannot open model file " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str(), path);
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    const DocumentEntry& single(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw InputError(source_ + ": missing field '" + key + "'");
        if (it->second.size() > 1)
            throw InputError(where(it->second[1].line) + ": field '" + key + "' given more than once");
        return it->second.front();
    }

    std::vector<DocumentEntry> all(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? std::vector<DocumentEntry>{} : it->second;
    }

    std::vector<SRational> rationals(const std::string& key, std::optional<std::size_t> count = std::nullopt) const {
        return rationals_of(single(key), key, count);
    }

    std::vector<SRational> rationals_of(const DocumentEntry& e, const std::string& key, std::optional<std::size_t> count) const {
        if (count && e.values.size() != *count)
            throw InputError(where(e.line) + ": field '" + key + "' needs " + std::to_string(*count) + " values, got " +
                             std::to_string(e.values.size()));
        std::vector<SRational> out;
        for (const std::string& v : e.values) {
            try {
                out.push_back(SRational::parse(v));
            } catch (const Error& err) {
                throw InputError(where(e.line) + ": field '" + key + "': " + err.what());
            }
        }
        return out;
    }

    std::vector<Integer> integers(const std::string& key, std::optional<std::size_t> count = std::nullopt) const {
        const DocumentEntry& e = single(key);
        std::vector<Integer> out;
        for (const SRational& q : rationals(key, count)) {
            if (!q.is_integer()) throw InputError(where(e.line) + ": field '" + key + "' must be integral");
            out.push_back(q.num());
        }
        return out;
    }

    std::string text(const std::string& key) const {
        const DocumentEntry& e = single(key);
        if (e.values.size() != 1) throw InputError(where(e.line) + ": field '" + key + "' needs one value");
        return e.values[0];
    }

    PlaceSet places(const std::string& key) const {
        const DocumentEntry& e = single(key);
        std::string joined;
        for (const auto& v : e.values) joined += (joined.empty() ? "" : ",") + v;
        try {
            return PlaceSet::parse(joined);
        } catch (const Error& err) {
            throw InputError(where(e.line) + ": field '" + key + "': " + err.what());
        }
    }

    Place place(const std::string& key) const {
        const DocumentEntry& e = single(key);
        try {
            return Place::parse(text(key));
        } catch (const Error& err) {
            throw InputError(where(e.line) + ": field '" + key + "': " + err.what());
        }
    }

    void expect_kind(const std::string& kind) const {
        if (text("kind") != kind)
            throw InputError(where(single("kind").line) + ": expected kind = " + kind + ", got " + text("kind"));
    }

    void reject_unknown(const std::vector<std::string>& known) const {
        for (const auto& [k, es] : entries_) {
            if (std::find(known.begin(), known.end(), k) == known.end())
                throw InputError(where(es.front().line) + ": unknown field '" + k + "'");
        }
    }

    std::string where(int line) const { return source_ + ":" + std::to_string(line); }

  private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::string source_;
    std::map<std::string, std::vector<DocumentEntry>> entries_;
};

// kind = cubic
//   cubic    20 coefficients, monomials of degree 3 in (w, x, y, z) in lexicographic order
//   boundary 4 coefficients of the boundary hyperplane
//   line     8 coefficients, two hyperplanes cutting out the line
//   S        primes (inf is implicit)
//   v        marked place
//   seed     4 homogeneous coordinates of a known point (optional, repeatable)
inline RawCubic load_cubic(const Document& d) {
    d.expect_kind("cubic");
    d.reject_unknown({"kind", "cubic", "boundary", "line", "S", "v", "seed"});
    RawCubic r;
    const auto c = d.rationals("cubic", 20);
    std::copy(c.begin(), c.end(), r.coefficients.begin());
    const auto b = d.rationals("boundary", 4);
    std::copy(b.begin(), b.end(), r.boundary.begin());
    const auto l = d.rationals("line", 8);
    std::copy(l.begin(), l.begin() + 4, r.line[0].begin());
    std::copy(l.begin() + 4, l.end(), r.line[1].begin());
    r.S = d.has("S") ? d.places("S") : PlaceSet{};
    r.v = d.has("v") ? d.place("v") : Place::infinite();
    for (const auto& e : d.all("seed")) {
        const auto s = d.rationals_of(e, "seed", 4);
        r.seeds.push_back({s[0], s[1], s[2], s[3]});
    }
    return r;
}

// kind = bundle
//   A B C D E F   integer coefficient lists in t, constant term first
//   section_x section_y   rational coefficient lists
//   marked        place of the marked point (default inf)
inline ConicBundleModel load_bundle(const Document& d) {
    d.expect_kind("bundle");
    d.reject_unknown({"kind", "A", "B", "C", "D", "E", "F", "section_x", "section_y", "marked"});
    ConicBundleModel m;
    const char* names[6] = {"A", "B", "C", "D", "E", "F"};
    for (int i = 0; i < 6; ++i) m.fiber_conic[static_cast<std::size_t>(i)] = d.has(names[i]) ? IntPolynomial(d.integers(names[i])) : IntPolynomial{};
    m.section_x = d.has("section_x") ? RatPolynomial(d.rationals("section_x")) : RatPolynomial{};
    m.section_y = d.has("section_y") ? RatPolynomial(d.rationals("section_y")) : RatPolynomial{};
    m.marked_place = d.has("marked") ? d.place("marked") : Place::infinite();
    m.validate();
    return m;
}

// kind = p1xp1
//   d        9 integers d[i][j], i then j, coefficient of x0^i x1^(2-i) y0^j y1^(2-j)
//   ruling   2 integers [a:b], the fiber x = [a:b]
//   v        marked place
struct P1xP1Model {
    BidegreeTwoForm D;
    std::array<Integer, 2> ruling;
    Place v = Place::infinite();
};

inline P1xP1Model load_p1xp1(const Document& d) {
    d.expect_kind("p1xp1");
    d.reject_unknown({"kind", "d", "ruling", "v"});
    P1xP1Model m;
    const auto c = d.integers("d", 9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m.D.d[i][j] = c[static_cast<std::size_t>(3 * i + j)];
    }
    const auto r = d.integers("ruling", 2);
    m.ruling = {r[0], r[1]};
    m.v = d.has("v") ? d.place("v") : Place::infinite();
    return m;
}

// kind = cover
//   P   integer coefficient list of P(z), constant term first
inline DoubleCoverModel load_cover(const Document& d) {
    d.expect_kind("cover");
    d.reject_unknown({"kind", "P"});
    return DoubleCoverModel(IntPolynomial(d.integers("P")));
}

}  // namespace sintpts

#endif
