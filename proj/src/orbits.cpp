#include "quadeq/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace quadeq {

namespace {

i64 floor_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s a + t b = g.
i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
    i64 old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, cs) = std::make_tuple(cs, old_s - q * cs);
        std::tie(old_t, ct) = std::make_tuple(ct, old_t - q * ct);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

// Is (x, y) in Z (a1, b1) + Z (a2, b2)?
bool in_lattice(i64 a1, i64 b1, i64 a2, i64 b2, i64 x, i64 y) {
    i64 s = 0, t = 0;
    i64 g = ext_gcd(a1, a2, s, t);
    if (g == 0) {
        if (x != 0) return false;
        i64 h = std::gcd(b1, b2);
        return h == 0 ? y == 0 : y % h == 0;
    }
    if (x % g != 0) return false;
    i64 w1y = s * b1 + t * b2;
    i64 w2y = (a2 / g) * b1 - (a1 / g) * b2;
    i64 rest = y - (x / g) * w1y;
    return w2y == 0 ? rest == 0 : rest % w2y == 0;
}

void require_klein(const ActionSpec& a) {
    if (a.eps != -1) throw EpsilonMismatch("this action is defined on the Klein bottle group only");
}

}  // namespace

ActionSpec ActionSpec::hat_abs(const Pi& u) {
    if (w_eps(u) != 1) throw CaseMismatch("HatAbs needs an orientation-preserving translation");
    ActionSpec a;
    a.kind = Kind::HatAbs;
    a.eps = u.eps;
    a.u = u;
    return a;
}

ActionSpec ActionSpec::tilde(i64 n) {
    if (n == 0) throw CaseMismatch("Tilde needs n != 0");
    ActionSpec a;
    a.kind = Kind::Tilde;
    a.n = n;
    return a;
}

ActionSpec ActionSpec::tilde_l(i64 n, i64 L) {
    ActionSpec a = tilde(n);
    a.kind = Kind::TildeL;
    a.L = L;
    return a;
}

ActionSpec ActionSpec::hat_l(i64 n, i64 L) {
    ActionSpec a = tilde(n);
    a.kind = Kind::HatL;
    a.L = L;
    return a;
}

i64 ActionSpec::ell_max() const {
    i64 m = n < 0 ? -n : n;
    if (m == 0) return 0;
    while (m % 2 == 0) m /= 2;
    return m;
}

i64 ActionSpec::mu() const { return n / ell_max(); }

Pi ActionSpec::x() const { return {-1, L, ell_max()}; }

std::string to_string(const ActionSpec& a) {
    switch (a.kind) {
        case ActionSpec::Kind::HatAbs: return "HatAbs{u=" + to_string(a.u) + "}";
        case ActionSpec::Kind::Tilde: return "Tilde{n=" + std::to_string(a.n) + "}";
        case ActionSpec::Kind::TildeL: return "TildeL{n=" + std::to_string(a.n) + ",L=" + std::to_string(a.L) + "}";
        case ActionSpec::Kind::HatL: return "HatL{n=" + std::to_string(a.n) + ",L=" + std::to_string(a.L) + "}";
    }
    return "";
}

bool Family::contains(const Pi& g) const {
    if (g.eps != base.eps) return false;
    return in_lattice(v1r, v1s, v2r, v2s, g.r - base.r, g.s - base.s);
}

std::vector<Family> orbit_families(const ActionSpec& a, const Pi& g) {
    std::vector<Family> out;
    Pi gi = pi_inv(g);
    switch (a.kind) {
        case ActionSpec::Kind::HatAbs: {
            if (g.eps != a.eps) throw EpsilonMismatch("element and action use different epsilon");
            if (a.eps == -1 && w_eps(g) == -1) {
                // u^k g^{+-1} with g odd also reaches beta^{4n'} shifts: lattice (m, 2n'), (0, 4n').
                out.push_back({g, a.u.r, a.u.s, 0, 2 * a.u.s, 1});
                out.push_back({gi, a.u.r, a.u.s, 0, 2 * a.u.s, -1});
            } else {
                out.push_back({g, a.u.r, a.u.s, 0, 0, 1});
                out.push_back({gi, a.u.r, a.u.s, 0, 0, -1});
            }
            return out;
        }
        case ActionSpec::Kind::Tilde:
            require_klein(a);
            out.push_back({g, 0, 2 * a.n, 0, 0, 1});
            out.push_back({gi, 0, 2 * a.n, 0, 0, -1});
            return out;
        case ActionSpec::Kind::TildeL: {
            require_klein(a);
            Pi x = a.x(), xi = pi_inv(x);
            out.push_back({g, 0, 2 * a.n, 0, 0, 1});
            out.push_back({gi, 0, 2 * a.n, 0, 0, -1});
            out.push_back({x * g * xi, 0, 2 * a.n, 0, 0, 1});
            out.push_back({x * gi * xi, 0, 2 * a.n, 0, 0, -1});
            return out;
        }
        case ActionSpec::Kind::HatL: {
            require_klein(a);
            Pi x = a.x(), xi = pi_inv(x), id = pi_identity(-1);
            i64 step = 2 * a.ell_max();
            for (int e : {1, -1}) {
                Pi h = e == 1 ? g : gi;
                for (int left = 0; left < 2; ++left)
                    for (int right = 0; right < 2; ++right) {
                        Pi b = (left ? x : id) * h * (right ? xi : id);
                        int sign = e * ((left + right) % 2 == 0 ? 1 : -1);
                        out.push_back({b, 0, step, 0, 0, sign});
                    }
            }
            return out;
        }
    }
    return out;
}

bool same_orbit(const ActionSpec& a, const Pi& g, const Pi& h) {
    if (g.eps != h.eps) throw EpsilonMismatch("elements with different epsilon");
    for (const auto& f : orbit_families(a, g))
        if (f.contains(h)) return true;
    return false;
}

ElementClass element_class(const ActionSpec& a, const Pi& g) {
    ElementClass c;
    if (a.kind == ActionSpec::Kind::HatAbs) return c;
    bool multiple = floor_mod(g.s, a.n) == 0;
    c.defective = multiple;
    c.g_tilde_regular = !(multiple && (g.s % 2 != 0 || g.r == 0));
    return c;
}

bool stabilizer_meets_minus(const ActionSpec& a, const Pi& g) {
    for (const auto& f : orbit_families(a, g))
        if (f.sign == -1 && f.contains(g)) return true;
    return false;
}

Augmentation augment(const ActionSpec& a, const Ring& V, const Pi& base) {
    Augmentation out;
    auto fams = orbit_families(a, base);
    bool parity = a.kind == ActionSpec::Kind::HatAbs;
    if (a.kind == ActionSpec::Kind::Tilde && !element_class(a, base).g_tilde_regular)
        throw SingularBase("twisted augmentation requested at the singular element " + to_string(base));
    if (a.kind == ActionSpec::Kind::TildeL || a.kind == ActionSpec::Kind::HatL)
        parity = stabilizer_meets_minus(a, base);
    out.mod2 = parity || V.domain() == Domain::Mod2;
    i64 sum = 0;
    for (const auto& [y, c] : V.terms()) {
        int sign = 0;
        for (const auto& f : fams) {
            if (!f.contains(y)) continue;
            if (sign != 0 && sign != f.sign && !parity)
                throw InconsistentSign("element " + to_string(y) + " is reached with both characters from " +
                                       to_string(base) + " under " + to_string(a));
            sign = f.sign;
        }
        if (sign == 0) continue;
        sum += parity ? c : sign * c;
    }
    out.value = out.mod2 ? floor_mod(sum, 2) : sum;
    return out;
}

std::vector<std::vector<Pi>> group_by_orbit(const ActionSpec& a, const std::vector<Pi>& elements) {
    std::vector<Pi> sorted = elements;
    std::sort(sorted.begin(), sorted.end(), PiLess{});
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::vector<Pi>> classes;
    std::vector<std::vector<Family>> fams;
    for (const auto& g : sorted) {
        bool placed = false;
        for (std::size_t i = 0; i < classes.size() && !placed; ++i) {
            for (const auto& f : fams[i])
                if (f.contains(g)) {
                    classes[i].push_back(g);
                    placed = true;
                    break;
                }
        }
        if (!placed) {
            classes.push_back({g});
            fams.push_back(orbit_families(a, g));
        }
    }
    return classes;
}

}  // namespace quadeq
