#pragma once

#include <map>
#include <string>

#include "quadeq/surface.hpp"

namespace quadeq {

enum class Domain { Integer, Mod2 };

// Finite sum of elements of pi_eps with coefficients in Z or Z2. Zero coefficients are never stored.
class Ring {
public:
    using Terms = std::map<Pi, i64, PiLess>;

    explicit Ring(int eps = 1, Domain dom = Domain::Integer) : eps_(eps), dom_(dom) {}

    static Ring single(const Pi& g, i64 c = 1, Domain dom = Domain::Integer);
    static Ring one(int eps, Domain dom = Domain::Integer) { return single(pi_identity(eps), 1, dom); }

    int eps() const { return eps_; }
    Domain domain() const { return dom_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    i64 coeff(const Pi& g) const;

    void add_term(const Pi& g, i64 c);

    friend bool operator==(const Ring& x, const Ring& y) {
        return x.eps_ == y.eps_ && x.dom_ == y.dom_ && x.terms_ == y.terms_;
    }

private:
    int eps_;
    Domain dom_;
    Terms terms_;
};

Ring operator+(const Ring& x, const Ring& y);
Ring operator-(const Ring& x, const Ring& y);
Ring operator-(const Ring& x);
Ring operator*(const Ring& x, const Ring& y);
Ring scalar_mul(i64 c, const Ring& x);
Ring translate(const Pi& g, const Ring& x);
i64 augmentation(const Ring& x);
Ring reduce_mod2(const Ring& x);
// Largest |r| over the support, 0 for the zero element.
i64 alpha_radius(const Ring& x);

std::string to_string(const Ring& x);

// (1 - x^a) / (1 - x^b), expanded as a finite geometric sum.
Ring geom_ratio(const Pi& x, i64 a, i64 b);
// (1 - x^two_d) / (1 + x^ell), expanded as a finite alternating sum.
Ring alt_geom_ratio(const Pi& x, i64 two_d, i64 ell);

// Fox derivative with respect to generator gen (0 = alpha, 1 = beta), projected to Z[pi].
Ring fox_derivative(const Word& w, int gen);
// Projected Fox derivative of the relator B.
Ring relator_derivative(int eps, int gen);
// lambda with lambda * D = P, where D is 1 - beta (eps = +1) or 1 + alpha beta (eps = -1).
Ring exact_divide(const Ring& P, const Ring& D);
// The map N -> Z[pi] sending prod B_{u_i}^{n_i} to sum n_i u_i.
Ring q_n(const Word& w);

}  // namespace quadeq
