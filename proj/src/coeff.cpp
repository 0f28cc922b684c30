#include "affhall/coeff.hpp"

#include <sstream>

namespace ah {

MotCoeff::MotCoeff(long c) {
    if (c != 0) t_[0] = c;
}

MotCoeff::MotCoeff(const mpz_class& c) {
    if (c != 0) t_[0] = c;
}

MotCoeff MotCoeff::s_pow(int e, const mpz_class& c) {
    MotCoeff r;
    if (c != 0) r.t_[e] = c;
    return r;
}

bool MotCoeff::is_one() const { return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second == 1; }

int MotCoeff::min_exp() const {
    if (t_.empty()) throw Error(Error::Domain, "min_exp of zero coefficient");
    return t_.begin()->first;
}

int MotCoeff::max_exp() const {
    if (t_.empty()) throw Error(Error::Domain, "max_exp of zero coefficient");
    return t_.rbegin()->first;
}

mpz_class MotCoeff::coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? mpz_class(0) : it->second;
}

bool MotCoeff::only_even() const {
    for (auto& [e, c] : t_)
        if (e % 2 != 0) return false;
    return true;
}

bool MotCoeff::is_unit() const {
    return t_.size() == 1 && (t_.begin()->second == 1 || t_.begin()->second == -1);
}

void MotCoeff::add_term(int e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

MotCoeff& MotCoeff::operator+=(const MotCoeff& o) {
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

MotCoeff& MotCoeff::operator-=(const MotCoeff& o) {
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

MotCoeff operator*(const MotCoeff& a, const MotCoeff& b) {
    MotCoeff r;
    if (a.t_.empty() || b.t_.empty()) return r;
    int lo = a.min_exp() + b.min_exp(), hi = a.max_exp() + b.max_exp();
    std::vector<mpz_class> acc(static_cast<size_t>(hi - lo + 1));
    for (auto& [e1, c1] : a.t_)
        for (auto& [e2, c2] : b.t_) acc[static_cast<size_t>(e1 + e2 - lo)] += c1 * c2;
    for (size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0) r.t_.emplace_hint(r.t_.end(), lo + static_cast<int>(i), acc[i]);
    return r;
}

MotCoeff& MotCoeff::operator*=(const MotCoeff& o) { return *this = *this * o; }

MotCoeff MotCoeff::operator-() const {
    MotCoeff r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

MotCoeff MotCoeff::shifted(int ds) const {
    MotCoeff r;
    for (auto& [e, c] : t_) r.t_.emplace_hint(r.t_.end(), e + ds, c);
    return r;
}

MotCoeff MotCoeff::pow(unsigned n) const {
    MotCoeff r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

MotCoeff MotCoeff::div_unit(const MotCoeff& u) const {
    if (!u.is_unit()) throw Error(Error::Domain, "division by a non-unit coefficient");
    MotCoeff r = shifted(-u.t_.begin()->first);
    return u.t_.begin()->second < 0 ? -r : r;
}

static mpq_class qpow(const mpq_class& x, int e) {
    if (e < 0) {
        if (x == 0) throw Error(Error::Domain, "negative power evaluated at zero");
        mpq_class r = 1 / qpow(x, -e);
        return r;
    }
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

mpq_class MotCoeff::eval_s(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto& [e, c] : t_) r += mpq_class(c) * qpow(x, e);
    return r;
}

mpq_class MotCoeff::eval_L(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto& [e, c] : t_) {
        if (e % 2 != 0) throw Error(Error::Domain, "non-integral Tate power");
        r += mpq_class(c) * qpow(x, e / 2);
    }
    return r;
}

std::string MotCoeff::str() const {
    if (t_.empty()) return "0";
    bool even = only_even();
    const char* var = even ? "L" : "s";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        int e = even ? it->first / 2 : it->first;
        mpz_class c = it->second;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        mpz_class a = abs(c);
        if (e == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str();
            os << var;
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

SpecMode SpecMode::point_count(long q) {
    if (q < 2 || !is_prime(q)) throw Error(Error::Domain, "point_count requires a prime q >= 2");
    return {PointCount, q};
}

SpecMode SpecMode::parse(const std::string& s) {
    if (s == "euler") return euler();
    if (s == "serre") return serre();
    if (s == "generic") return generic();
    const std::string pre = "point_count:";
    if (s.rfind(pre, 0) == 0) {
        try {
            return point_count(std::stol(s.substr(pre.size())));
        } catch (const std::invalid_argument&) {
        }
    }
    throw Error(Error::Malformed, "unknown specialization '" + s + "' (euler, serre, generic, point_count:<prime>)");
}

std::string SpecMode::str() const {
    switch (kind) {
        case Euler: return "euler";
        case PointCount: return "point_count:" + std::to_string(q);
        case Serre: return "serre";
        default: return "generic";
    }
}

std::string Specialized::str() const { return integer ? integer->get_str() : coeff->str(); }

Specialized specialize(const MotCoeff& c, const SpecMode& m) {
    Specialized r;
    switch (m.kind) {
        case SpecMode::Euler:
        case SpecMode::PointCount: {
            mpq_class v = c.eval_L(m.kind == SpecMode::Euler ? 1 : m.q);
            if (v.get_den() != 1) throw Error(Error::Domain, "specialized value is not an integer");
            r.integer = v.get_num();
            break;
        }
        default: r.coeff = c;
    }
    return r;
}

// ---- UPoly

UPoly::UPoly(std::vector<MotCoeff> c) : c_(std::move(c)) { trim(); }

UPoly::UPoly(const MotCoeff& c) {
    if (!c.is_zero()) c_.push_back(c);
}

UPoly UPoly::monomial(int deg, const MotCoeff& c) {
    std::vector<MotCoeff> v(static_cast<size_t>(deg + 1));
    v[static_cast<size_t>(deg)] = c;
    return UPoly(std::move(v));
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

MotCoeff UPoly::operator[](int i) const {
    return (i < 0 || i > degree()) ? MotCoeff() : c_[static_cast<size_t>(i)];
}

int UPoly::low_degree() const {
    for (int i = 0; i <= degree(); ++i)
        if (!c_[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<MotCoeff> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
}

UPoly operator*(const MotCoeff& a, const UPoly& b) { return UPoly(a) * b; }

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly UPoly::reciprocal_scaled(const MotCoeff& c, int deg) const {
    if (deg < degree()) throw Error(Error::Internal, "reciprocal degree too small");
    std::vector<MotCoeff> r(static_cast<size_t>(deg + 1));
    MotCoeff cp(1);
    for (int i = 0; i <= degree(); ++i) {
        r[static_cast<size_t>(deg - i)] = c_[static_cast<size_t>(i)] * cp;
        cp *= c;
    }
    return UPoly(std::move(r));
}

UPoly UPoly::shift(int k) const {
    if (is_zero()) return {};
    std::vector<MotCoeff> r(static_cast<size_t>(k));
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(std::move(r));
}

std::string UPoly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        const MotCoeff& c = c_[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << "(" << c.str() << ")";
            continue;
        }
        if (!c.is_one()) os << "(" << c.str() << ")*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace ah
