#include "hitcalc/sum_maps.hpp"

#include <algorithm>
#include <stdexcept>

#include "hitcalc/arith.hpp"
#include "order_key.hpp"

namespace hitcalc {

namespace {

void sort_unique_descending(std::vector<Monomial>& v)
{
    std::vector<std::pair<detail::OrderKey, Monomial>> keyed;
    keyed.reserve(v.size());
    for (const auto& m : v) keyed.emplace_back(detail::order_key(m), m);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    v.clear();
    for (auto& [k, m] : keyed) v.push_back(m);
}

bool desc_less(const Monomial& a, const Monomial& b)
{
    return detail::order_key(a) > detail::order_key(b);
}

std::vector<Monomial> set_difference(const std::vector<Monomial>& a, const std::vector<Monomial>& b)
{
    std::vector<Monomial> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), desc_less);
    return out;
}

std::vector<Monomial> set_union(const std::vector<Monomial>& a, const std::vector<Monomial>& b)
{
    std::vector<Monomial> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), desc_less);
    return out;
}

bool contains(const std::vector<Monomial>& sorted, const Monomial& x)
{
    return std::binary_search(sorted.begin(), sorted.end(), x, desc_less);
}

std::vector<Monomial> restrict_weight(const std::vector<Monomial>& v, const WeightVector& omega)
{
    std::vector<Monomial> out;
    for (const auto& m : v)
        if (weight_vector(m) == omega) out.push_back(m);
    return out;
}

void pairs_rec(int t, int next, PairLL& cur, int min_length, std::vector<PairLL>& out)
{
    if (cur.r() >= min_length) out.push_back(cur);
    for (int v = next; v <= t; ++v) {
        cur.L.push_back(v);
        pairs_rec(t, v + 1, cur, min_length, out);
        cur.L.pop_back();
    }
}

}  // namespace

bool PairLL::valid_for(int t) const
{
    if (l < 1 || l > t || r() > t - 1) return false;
    int prev = l;
    for (int v : L) {
        if (v <= prev || v > t) return false;
        prev = v;
    }
    return true;
}

std::vector<PairLL> enumerate_pairs(int t, int min_length)
{
    std::vector<PairLL> out;
    for (int l = 1; l <= t; ++l) {
        PairLL cur{l, {}};
        pairs_rec(t, l + 1, cur, min_length, out);
    }
    return out;
}

Monomial q_map(int l, int t, const Monomial& x)
{
    if (x.arity() != t - 1 || l < 1 || l > t) throw std::out_of_range("q_map: index out of range");
    Monomial out(t);
    for (int j = 1; j <= t - 1; ++j) out.set(j < l ? j - 1 : j, x[j - 1]);
    return out;
}

Monomial x_LU(const std::vector<int>& L, int u, int r, int t)
{
    Monomial out(t);
    if (L.empty()) return out;
    if (r != static_cast<int>(L.size()) || u < 1 || u > r) throw std::invalid_argument("x_LU: need 1 <= u <= r = |L|");
    int head = 0;
    for (int d = 1; d <= u; ++d) head += 1 << (r - d);
    out.set(L[static_cast<std::size_t>(u - 1)] - 1, head);
    for (int d = u + 1; d <= r; ++d) out.set(L[static_cast<std::size_t>(d - 1)] - 1, 1 << (r - d));
    return out;
}

PsiOutcome psi_detail(int l, const std::vector<int>& L, const Monomial& x)
{
    const int t = x.arity() + 1;
    const PairLL pair{l, L};
    if (!pair.valid_for(t)) throw std::invalid_argument("psi: (l, L) is not in N_t");
    PsiOutcome out;
    const int r = pair.r();
    if (r == 0) {
        out.image = q_map(l, t, x);
        return out;
    }
    const int top = 1 << r;
    // Exponent of the arity t - 1 variable that q_(l,t) sends to position l_d.
    auto a = [&](int d) { return x[L[static_cast<std::size_t>(d - 1)] - 2]; };
    auto satisfies = [&](int u) {
        for (int d = 1; d < u; ++d)
            if (a(d) + 1 != top) return false;
        if (a(u) + 1 <= top) return false;
        for (int d = 1; d <= u; ++d)
            if (alpha_j(a(u), r - d) != 1) return false;
        for (int d = u + 1; d <= r; ++d)
            if (alpha_j(a(d), r - d) != 1) return false;
        return true;
    };
    for (int u = 1; u <= r; ++u) {
        if (!satisfies(u)) continue;
        ++out.matching_u;
        if (out.u == 0) out.u = u;
    }
    if (out.u == 0) return out;
    Monomial lifted = q_map(l, t, x);
    lifted.set(l - 1, top - 1);
    auto quotient = divide(lifted, x_LU(L, out.u, r, t));
    if (!quotient) throw std::logic_error("psi: x_(L,u) does not divide the lifted monomial");
    out.image = *quotient;
    return out;
}

std::optional<Monomial> psi(int l, const std::vector<int>& L, const Monomial& x)
{
    return psi_detail(l, L, x).image;
}

std::vector<Monomial> phi_zero(const std::vector<Monomial>& C, int t)
{
    std::vector<Monomial> out;
    for (const auto& x : C)
        for (int l = 1; l <= t; ++l) out.push_back(q_map(l, t, x));
    sort_unique_descending(out);
    return out;
}

std::vector<Monomial> phi_positive(const std::vector<Monomial>& C, int t)
{
    std::vector<Monomial> out;
    const auto pairs = enumerate_pairs(t, 1);
    for (const auto& x : C)
        for (const auto& p : pairs)
            if (auto y = psi(p.l, p.L, x); y && !y->has_zero_exponent()) out.push_back(*y);
    sort_unique_descending(out);
    return out;
}

std::string to_string(RhoVariant v)
{
    return v == RhoVariant::PositiveOnly ? "rho>=1" : "rho>=0";
}

std::vector<int> u_set_variant(int t, int n, RhoVariant v)
{
    auto u = u_set(t, n);
    if (v == RhoVariant::PositiveOnly) std::erase(u, 0);
    return u;
}

std::vector<Monomial> mothebe_uys_sets(Engine& engine, int t, int n)
{
    if (t < 2) throw std::invalid_argument("mothebe_uys_sets: needs t >= 2");
    std::vector<Monomial> out;
    for (int rho : u_set_variant(t, n, RhoVariant::PositiveOnly)) {
        const int spike = (1 << rho) - 1;
        const BasisReport lower = engine.positive_part(t - 1, n - spike);
        for (const auto& x : lower.admissibles)
            for (int l = 1; l <= t; ++l) {
                Monomial y = q_map(l, t, x);
                y.set(l - 1, spike);
                out.push_back(y);
            }
    }
    sort_unique_descending(out);
    return out;
}

std::vector<Monomial> c_set(Engine& engine, int t, int n, RhoVariant v)
{
    if (t < 2) throw std::invalid_argument("c_set: needs t >= 2");
    std::vector<Monomial> out;
    for (int rho : u_set_variant(t, n, v)) {
        const int spike = (1 << rho) - 1;
        const BasisReport lower = engine.admissible_basis(t - 1, n - spike);
        for (const auto& y : lower.admissibles)
            for (int j = 1; j <= t; ++j) {
                Monomial x = q_map(j, t, y);
                x.set(j - 1, spike);
                out.push_back(x);
            }
    }
    sort_unique_descending(out);
    return out;
}

bool EfcPartition::disjoint_cover() const
{
    auto inter = [](const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
        std::vector<Monomial> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), desc_less);
        return out.size();
    };
    if (inter(E, F) || inter(E, C) || inter(F, C)) return false;
    return set_union(set_union(E, F), C) == block;
}

EfcPartition efc_partition(Engine& engine, int t, int n)
{
    const auto z = minimal_spike(t, n);
    if (!z) throw std::invalid_argument("efc_partition: mu(n) > t, no minimal spike");
    EfcPartition p;
    p.t = t;
    p.n = n;
    p.omega = weight_vector(*z);
    p.block = restrict_weight(engine.positive_part(t, n).admissibles, p.omega);
    p.C = mothebe_uys_sets(engine, t, n);
    const auto lower_block = restrict_weight(engine.admissible_basis(t - 1, n).admissibles, p.omega);
    p.E = set_difference(phi_positive(lower_block, t), p.C);
    for (const auto& m : set_union(p.E, p.C))
        if (!contains(p.block, m)) p.violations.push_back(m);
    p.F = set_difference(p.block, set_union(p.E, p.C));
    return p;
}

std::string ConjectureVerdict::status() const
{
    if (!hypothesis_met) return "hypothesis-not-met";
    return holds ? "holds" : "fails";
}

nlohmann::json to_json(const ConjectureVerdict& v)
{
    auto mons = [](const std::vector<Monomial>& xs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& m : xs) a.push_back(to_string(m));
        return a;
    };
    nlohmann::json j{{"conjecture", v.conjecture},
                     {"t", v.t},
                     {"n", v.n},
                     {"omega", v.omega ? nlohmann::json(to_string(*v.omega)) : nlohmann::json(nullptr)},
                     {"holds", v.holds},
                     {"violations", mons(v.violations)},
                     {"variant", to_string(v.variant)},
                     {"status", v.status()},
                     {"hypothesis_met", v.hypothesis_met},
                     {"checked", v.checked}};
    if (v.conjecture == "gtP") {
        j["missing"] = mons(v.missing);
        j["extra"] = mons(v.extra);
    }
    return j;
}

ConjectureVerdict conjecture_gtS_check(Engine& engine, int t, int n)
{
    if (t < 2) throw std::invalid_argument("conjecture_gtS_check: needs t >= 2");
    ConjectureVerdict v;
    v.conjecture = "gtS";
    v.t = t;
    v.n = n;
    const BasisReport lower = engine.admissible_basis(t - 1, n);
    if (lower.admissibles.empty()) {
        v.holds = true;
        return v;
    }
    const BasisReport upper = engine.admissible_basis(t, n);
    for (const auto& x : lower.admissibles) {
        const WeightVector wx = weight_vector(x);
        for (const auto& p : enumerate_pairs(t, 0)) {
            auto y = psi(p.l, p.L, x);
            if (!y) continue;
            ++v.checked;
            if (!upper.contains(*y) || weight_vector(*y) != wx) v.violations.push_back(*y);
        }
    }
    sort_unique_descending(v.violations);
    v.holds = v.violations.empty();
    return v;
}

ConjectureVerdict conjecture_gtP_check(Engine& engine, int t, int n, const WeightVector& omega, RhoVariant variant)
{
    if (t < 2) throw std::invalid_argument("conjecture_gtP_check: needs t >= 2");
    ConjectureVerdict v;
    v.conjecture = "gtP";
    v.t = t;
    v.n = n;
    v.omega = omega;
    v.variant = variant;

    const auto lower = restrict_weight(engine.admissible_basis(t - 1, n).admissibles, omega);
    const auto upper = restrict_weight(engine.admissible_basis(t, n).admissibles, omega);
    const int target = static_cast<int>(u_set_variant(t, n, variant).size());
    for (const auto& x : lower) {
        int max_r = -1;
        for (const auto& p : enumerate_pairs(t, 0))
            if (psi(p.l, p.L, x)) max_r = std::max(max_r, p.r());
        if (max_r != target) v.hypothesis_met = false;
    }
    v.checked = lower.size();

    auto lhs = set_union(phi_zero(lower, t), phi_positive(lower, t));
    lhs = set_union(lhs, restrict_weight(c_set(engine, t, n, variant), omega));
    v.missing = set_difference(upper, lhs);
    v.extra = set_difference(lhs, upper);
    v.violations = set_union(v.missing, v.extra);
    v.holds = v.violations.empty();
    return v;
}

}  // namespace hitcalc
