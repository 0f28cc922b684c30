#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "affhall/coeff.hpp"

namespace ah {

using Vec = std::vector<long>;
using IMat = std::vector<long>;  // row-major r x r

long dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(long k, const Vec& a);
Vec neg(const Vec& a);
bool is_zero(const Vec& a);

struct Root {
    Vec alpha;     // simple-root coordinates
    Vec omega;     // fundamental-weight coordinates: <beta, alpha_i^v>
    Vec coroot;    // simple-coroot coordinates of beta^v
    mpq_class len2;
    long kac;      // 2/(beta,beta), the central coefficient of the affine coroot per unit delta
    int height;
    bool positive;
};

struct FiniteWeylElt {
    IMat onL;    // action on L in simple-coroot coordinates
    IMat onLd;   // action on L^v in fundamental-weight coordinates
    std::vector<int> word;
    int length = 0;
};

class RootSystem {
public:
    static constexpr int kDefaultRankCap = 4;
    static std::shared_ptr<const RootSystem> build(char type, int rank, int rank_cap = kDefaultRankCap);

    char type() const { return type_; }
    int rank() const { return r_; }
    std::string label() const { return std::string(1, type_) + std::to_string(r_); }
    const IMat& cartan() const { return A_; }  // A_ij = <alpha_i^v, alpha_j>
    long cartan(int i, int j) const { return A_[static_cast<size_t>(i * r_ + j)]; }
    const std::vector<Root>& roots() const { return roots_; }      // positive first, by height
    int num_positive() const { return npos_; }
    const Root& theta() const { return roots_[static_cast<size_t>(theta_)]; }
    int h() const { return h_; }
    int h_dual() const { return hv_; }
    bool simply_laced() const { return simply_laced_; }
    const mpq_class& simple_len2(int i) const { return len2_[static_cast<size_t>(i)]; }

    long psi(const Vec& a, const Vec& b) const;  // Psi on L, simple-coroot coordinates
    long psi_entry(int i, int j) const { return psi_[static_cast<size_t>(i * r_ + j)]; }
    Vec psi_dual(const Vec& b) const;           // Psi(b, .) as an element of L^v
    long pair_rho(const Vec& a) const;           // <rho, a>
    Vec rho() const { return Vec(static_cast<size_t>(r_), 1); }
    Vec two_rho_dual() const;                    // 2 rho^v in simple-coroot coordinates
    Vec simple_coroot(int i) const;
    Vec simple_root_omega(int i) const;

    int root_index(const Vec& omega) const;      // -1 if not a root
    bool is_positive_omega(const Vec& omega) const;

    const std::vector<FiniteWeylElt>& weyl() const { return W_; }
    int weyl_size() const { return static_cast<int>(W_.size()); }
    int identity() const { return 0; }
    int simple_reflection(int i) const { return sref_[static_cast<size_t>(i)]; }
    int mul(int u, int v) const;
    int inv(int u) const { return inv_[static_cast<size_t>(u)]; }
    Vec actL(int u, const Vec& x) const;
    Vec actLd(int u, const Vec& mu) const;
    int weyl_index_of_L(const IMat& m) const;
    // finite inversions: positive beta with u(beta) < 0
    std::vector<int> finite_inversions(int u) const;

    std::string to_json() const;

private:
    char type_ = 'A';
    int r_ = 0;
    IMat A_, psi_;
    std::vector<mpq_class> len2_;
    std::vector<Root> roots_;
    int npos_ = 0, theta_ = 0, h_ = 0, hv_ = 0;
    bool simply_laced_ = true;
    std::map<Vec, int> root_by_omega_;
    std::vector<FiniteWeylElt> W_;
    std::map<IMat, int> w_by_L_;
    std::vector<int> sref_, mult_, inv_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// weights given in fundamental-weight coordinates
long kappa_index(const RootSystem& rs, const std::vector<Vec>& weights);

}  // namespace ah
