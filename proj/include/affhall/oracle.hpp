#pragma once

#include <cstdint>
#include <vector>

namespace ah {

// Binary forms over F_q: f[i] is the coefficient of x^i y^(d-i), d = f.size() - 1.
using Form = std::vector<int>;

struct OracleLimits {
    std::uint64_t max_enumeration = 1ull << 24;  // tuples visited per cell
    int max_degree = 6;
};

void check_field(long q);
// true when the forms have no common zero on P^1 over the algebraic closure
bool forms_coprime(const std::vector<Form>& fs, long q);

std::uint64_t count_subsheaves(long q, long a1, const OracleLimits& lim = {});
std::uint64_t count_subbundles(long q, long a1, const OracleLimits& lim = {});
std::uint64_t count_polar_sections(long q, long m, long n, const OracleLimits& lim = {});
std::uint64_t count_symmetric_product(long q, long n, const OracleLimits& lim = {});
// full flags L1 in F2 in O^3 on P^1 with deg L1 = -k1, deg F2 = -k2
std::uint64_t count_flags_rank3(long q, long k1, long k2, const OracleLimits& lim = {});

}  // namespace ah
