#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affhall/coeff.hpp"

namespace ah {

// sum_{a1 <= 0} c_{a1} z1^{a1} z2^{-a1}; in x = z2/z1 the coefficient of x^k is c_{-k}
struct Rank2Series {
    std::map<long, MotCoeff> c;
    long order = 0;  // exact for -order <= a1 <= 0
    std::optional<RatFnU> closed;
    MotCoeff at(long a1) const;
    std::vector<MotCoeff> stream() const;  // x^0 .. x^order
};

// subsheaves of the trivial rank-2 bundle on P^1
Rank2Series quot_series(long order);
// E with E * zeta(x) = the quot series
Rank2Series subbundle_series_from_quot(const Rank2Series& q, const RatFnU& zeta);
Rank2Series rank2_from_stream(const std::vector<MotCoeff>& xs);

// prefactor (L^{sL} z1/z2)^{sz (2-2g)}, signs +-1; sL = sz = +1 is the printed form
struct Rank2Sign {
    int sL = 1, sz = 1;
    friend bool operator==(const Rank2Sign& a, const Rank2Sign& b) { return a.sL == b.sL && a.sz == b.sz; }
};
std::vector<Rank2Sign> rank2_signs();
std::string rank2_sign_str(const Rank2Sign& s);

RatFnU funceq_residual_rank2(const Rank2Series& s, int genus, const Rank2Sign& sign);

struct Rank2Report {
    RatFnU residual;
    std::vector<Rank2Sign> vanishing;
};
Rank2Report check_rank2(const Rank2Series& s, int genus, const Rank2Sign& sign);

std::string rank2_to_json(const Rank2Series& s);
// [{"a1": -k, "coeff": {...}}, ...]
Rank2Series rank2_from_json(const std::string& js);

}  // namespace ah
