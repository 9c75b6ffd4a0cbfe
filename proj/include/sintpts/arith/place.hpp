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

#ifndef SINTPTS_ARITH_PLACE_HPP
#define SINTPTS_ARITH_PLACE_HPP

#include "sintpts/arith/rational.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sintpts {

class Place {
  public:
    enum class Kind { Infinite, Finite };

    static Place infinite() { return Place(); }
    static Place finite(const Integer& p) {
        if (!fits_u64(p) || !is_prime(p))
            throw InputError("place " + p.get_str() + " is not a prime below 2^64");
        Place v;
        v.kind_ = Kind::Finite;
        v.p_ = p;
        return v;
    }
    static Place finite(long p) { return finite(Integer(p)); }

    // "inf" or a prime.
    static Place parse(const std::string& text) {
        if (text == "inf") return infinite();
        return finite(parse_integer(text));
    }

    Kind kind() const { return kind_; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    const Integer& prime() const {
        if (is_infinite()) throw Error("the infinite place has no prime");
        return p_;
    }
    std::string str() const { return is_infinite() ? "inf" : p_.get_str(); }

    friend bool operator==(const Place& a, const Place& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.kind_ != b.kind_) return a.is_infinite();
        return a.p_ < b.p_;
    }

  private:
    Place() = default;
    Kind kind_ = Kind::Infinite;
    Integer p_ = 0;
};

// A finite set of places of Q; always contains infinity.
class PlaceSet {
  public:
    PlaceSet() = default;
    explicit PlaceSet(const std::vector<Integer>& primes) {
        for (const Integer& p : primes) add(p);
    }
    PlaceSet(std::initializer_list<long> primes) {
        for (long p : primes) add(Integer(p));
    }

    // "inf", "inf,2,3" or "2,3"; infinity is implicit.
    static PlaceSet parse(const std::string& text) {
        PlaceSet s;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            item = item.substr(b, e - b + 1);
            if (item == "inf") continue;
            const Integer p = parse_integer(item);
            if (s.contains_prime(p)) throw InputError("duplicate place " + item + " in S");
            s.add(p);
        }
        return s;
    }

    void add(const Integer& p) {
        Place::finite(p);
        for (const Integer& q : primes_) {
            if (q == p) return;
        }
        primes_.push_back(p);
        std::sort(primes_.begin(), primes_.end());
    }

    PlaceSet united(const PlaceSet& other) const {
        PlaceSet r = *this;
        for (const Integer& p : other.primes_) r.add(p);
        return r;
    }

    const std::vector<Integer>& primes() const { return primes_; }
    bool contains_prime(const Integer& p) const {
        return std::find(primes_.begin(), primes_.end(), p) != primes_.end();
    }
    bool contains(const Place& v) const { return v.is_infinite() || contains_prime(v.prime()); }

    // Infinity first, then primes ascending.
    std::vector<Place> places() const {
        std::vector<Place> out{Place::infinite()};
        for (const Integer& p : primes_) out.push_back(Place::finite(p));
        return out;
    }
    std::size_t size() const { return primes_.size() + 1; }

    std::string str() const {
        std::string s = "inf";
        for (const Integer& p : primes_) s += "," + p.get_str();
        return s;
    }

    friend bool operator==(const PlaceSet& a, const PlaceSet& b) { return a.primes_ == b.primes_; }

  private:
    std::vector<Integer> primes_;
};

// Largest divisor of n that is coprime to every prime of S.
inline Integer s_free_part(const Integer& n, const PlaceSet& S) {
    Integer m = int_abs(n);
    for (const Integer& p : S.primes()) m = remove_factor(m, p);
    return m;
}

inline bool is_s_unit_integer(const Integer& n, const PlaceSet& S) { return sgn(n) != 0 && s_free_part(n, S) == 1; }

inline bool is_s_integer(const SRational& q, const PlaceSet& S) { return s_free_part(q.den(), S) == 1; }

inline bool is_s_unit(const SRational& q, const PlaceSet& S) {
    return !q.is_zero() && is_s_unit_integer(q.num(), S) && is_s_unit_integer(q.den(), S);
}

inline int ord_p(const SRational& q, const Integer& p) { return ord_p(q.num(), p) - ord_p(q.den(), p); }

}  // namespace sintpts

#endif
