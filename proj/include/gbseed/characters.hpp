// characters.hpp
// Dirichlet characters mod q via CRT: discrete-log tables on each prime-power
// factor (cyclic for odd p^e and for 4; the <-1> x <5> pair at 2^a, a >= 3).
// Characters evaluate lazily through the shared tables, so the full group of
// phi(q) characters stays cheap to hold even at q ~ 10^4.

#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "gbseed/arith.hpp"
#include "gbseed/common.hpp"

namespace gbseed::arith {

inline constexpr uint64_t kCharacterModulusCap = 100'000;

namespace detail {

inline uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m; // moduli <= 1e5, no overflow
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline uint64_t primitive_root_mod_pe(uint64_t p, uint32_t e) {
    // generator mod p first
    uint64_t phi_p = p - 1;
    std::vector<uint64_t> prime_factors;
    {
        uint64_t m = phi_p;
        for (uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                prime_factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) prime_factors.push_back(m);
    }
    uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (uint64_t r : prime_factors)
            if (pow_mod(g, phi_p / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (e == 1) return g;
    // g or g+p generates mod p^2, and then mod every higher power
    uint64_t p2 = p * p;
    if (pow_mod(g, p - 1, p2) == 1) g += p;
    return g;
}

} // namespace detail

// One cyclic component of (Z/q)^*: order and a dlog table on its prime-power
// factor. 2^a with a >= 3 contributes two components over the same factor.
struct UnitGroup {
    uint64_t q = 1;
    struct Component {
        uint64_t pe;    // prime-power factor this component lives on
        uint64_t p;
        uint32_t e;
        uint64_t order; // cyclic order
        std::vector<uint32_t> dlog; // indexed by n mod pe; units only
    };
    std::vector<Component> comps;

    static std::shared_ptr<const UnitGroup> build(uint64_t q) {
        auto g = std::make_shared<UnitGroup>();
        g->q = q;
        for (const auto& pp : factorize(q)) {
            uint64_t pe = pow_u64(pp.p, pp.e);
            if (pp.p == 2) {
                if (pp.e == 1) continue; // trivial unit group
                if (pp.e == 2) {
                    Component c{pe, 2, pp.e, 2, std::vector<uint32_t>(pe, 0)};
                    c.dlog[1] = 0;
                    c.dlog[3] = 1;
                    g->comps.push_back(std::move(c));
                    continue;
                }
                // (Z/2^a)^* = <-1> x <5>
                uint64_t half = pe >> 2; // order of <5> = 2^(a-2)
                Component cs{pe, 2, pp.e, 2, std::vector<uint32_t>(pe, 0)};
                Component ck{pe, 2, pp.e, half, std::vector<uint32_t>(pe, 0)};
                uint64_t v = 1;
                for (uint64_t k = 0; k < half; ++k) {
                    cs.dlog[v] = 0;
                    ck.dlog[v] = static_cast<uint32_t>(k);
                    uint64_t neg = pe - v;
                    cs.dlog[neg] = 1;
                    ck.dlog[neg] = static_cast<uint32_t>(k);
                    v = v * 5 % pe;
                }
                g->comps.push_back(std::move(cs));
                g->comps.push_back(std::move(ck));
            } else {
                uint64_t ord = pe / pp.p * (pp.p - 1);
                Component c{pe, pp.p, pp.e, ord, std::vector<uint32_t>(pe, 0)};
                uint64_t gen = detail::primitive_root_mod_pe(pp.p, pp.e);
                uint64_t v = 1;
                for (uint64_t k = 0; k < ord; ++k) {
                    c.dlog[v] = static_cast<uint32_t>(k);
                    v = v * gen % pe;
                }
                g->comps.push_back(std::move(c));
            }
        }
        return g;
    }
};

struct DirichletCharacter {
    uint64_t modulus = 1;
    bool principal = true;
    bool primitive = true;
    uint64_t conductor = 1;
    std::shared_ptr<const UnitGroup> group;
    std::vector<uint64_t> exps; // exponent per cyclic component

    cplx operator()(uint64_t n) const {
        if (modulus == 1) return {1.0, 0.0};
        uint64_t r = n % modulus;
        if (std::gcd(r, modulus) != 1) return {0.0, 0.0};
        double phase = 0.0;
        for (size_t i = 0; i < exps.size(); ++i) {
            const auto& c = group->comps[i];
            uint64_t k = c.dlog[r % c.pe];
            phase += static_cast<double>(exps[i] % c.order) *
                     (static_cast<double>(k) / static_cast<double>(c.order));
        }
        return e(phase);
    }
};

namespace detail {

// conductor exponent of the component character with exponent t
inline uint64_t component_conductor(const UnitGroup::Component& c, uint64_t t,
                                    uint64_t t_partner, bool is_sign_part) {
    t %= c.order;
    if (c.p != 2) {
        if (t == 0) return 1;
        uint32_t vp = 0;
        uint64_t x = t;
        while (x % c.p == 0) x /= c.p, ++vp;
        uint32_t f = (vp + 1 >= c.e) ? 1 : c.e - vp;
        return pow_u64(c.p, f);
    }
    if (c.e == 2) return t == 0 ? 1 : 4;
    // 2^a, a >= 3: the two components share one conductor; report it on the
    // sign part and 1 on the partner to keep the product correct.
    uint64_t u = is_sign_part ? t : t_partner;
    uint64_t v = is_sign_part ? t_partner : t;
    if (!is_sign_part) return 1;
    if (v % (c.pe >> 2) == 0) return (u % 2) ? 4 : 1;
    uint32_t v2 = 0;
    uint64_t x = v % (c.pe >> 2);
    while (x % 2 == 0) x /= 2, ++v2;
    return pow_u64(2, c.e - v2);
}

} // namespace detail

inline std::vector<DirichletCharacter> characters_mod(uint64_t q) {
    if (q == 0) throw domain_error("characters_mod: q must be >= 1");
    if (q > kCharacterModulusCap)
        throw resource_error("characters_mod: q exceeds cap " +
                             std::to_string(kCharacterModulusCap));
    auto group = UnitGroup::build(q);
    size_t nc = group->comps.size();
    uint64_t total = 1;
    for (const auto& c : group->comps) total *= c.order;

    std::vector<DirichletCharacter> out;
    out.reserve(total);
    std::vector<uint64_t> exps(nc, 0);
    for (uint64_t idx = 0; idx < total; ++idx) {
        DirichletCharacter chi;
        chi.modulus = q;
        chi.group = group;
        chi.exps = exps;
        chi.principal = true;
        for (uint64_t t : exps)
            if (t != 0) chi.principal = false;
        uint64_t cond = 1;
        for (size_t i = 0; i < nc; ++i) {
            const auto& c = group->comps[i];
            bool two_gen = (c.p == 2 && c.e >= 3);
            uint64_t partner = 0;
            bool sign_part = false;
            if (two_gen) {
                sign_part = (c.order == 2 && i + 1 < nc &&
                             group->comps[i + 1].pe == c.pe);
                partner = sign_part ? exps[i + 1] : exps[i - 1];
            }
            cond *= detail::component_conductor(c, exps[i], partner, sign_part);
        }
        chi.conductor = cond;
        chi.primitive = (cond == q);
        out.push_back(std::move(chi));

        for (size_t i = 0; i < nc; ++i) { // mixed-radix increment
            if (++exps[i] < group->comps[i].order) break;
            exps[i] = 0;
        }
    }
    return out;
}

// tau(chi) = sum over a coprime to q of chi(a) e(a/q)
inline cplx gauss_sum(const DirichletCharacter& chi) {
    uint64_t q = chi.modulus;
    if (q == 1) return {1.0, 0.0};
    cplx s{0.0, 0.0};
    for (uint64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1)
            s += chi(a) * e_frac(static_cast<int64_t>(a), static_cast<int64_t>(q));
    return s;
}

// psi(x, chi) = sum_{n <= x} Lambda(n) chi(n), by direct summation.
inline cplx psi_chi(uint64_t x, const DirichletCharacter& chi,
                    const SieveWindow& w) {
    if (x < 1) throw domain_error("psi_chi: x must be >= 1");
    if (!w.covers(1, x)) throw domain_error("psi_chi: window does not cover [1, x]");
    return sum_blocked<cplx>(x, [&](uint64_t i) -> cplx {
        uint64_t n = i + 1;
        double l = w.lambda_at(n);
        return l == 0.0 ? cplx{0.0, 0.0} : l * chi(n);
    });
}

inline cplx psi_chi(uint64_t x, const DirichletCharacter& chi) {
    return psi_chi(x, chi, build_window(1, x + 1));
}

} // namespace gbseed::arith
