#pragma once

#include <random>
#include <vector>

#include "hitcalc/monomial.hpp"
#include "hitcalc/steenrod.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::Exps to_exps(const hitcalc::Monomial& m)
{
    oracle::Exps e;
    for (int j = 0; j < m.arity(); ++j) e.push_back(m[j]);
    return e;
}

inline hitcalc::Monomial from_exps(const oracle::Exps& e)
{
    hitcalc::Monomial m(static_cast<int>(e.size()));
    for (std::size_t j = 0; j < e.size(); ++j) m.set(static_cast<int>(j), e[j]);
    return m;
}

inline std::vector<oracle::Exps> to_exps(const std::vector<hitcalc::Monomial>& ms)
{
    std::vector<oracle::Exps> out;
    for (const auto& m : ms) out.push_back(to_exps(m));
    return out;
}

inline oracle::Poly to_poly(const hitcalc::Polynomial& f)
{
    oracle::Poly p;
    for (const auto& m : f.terms()) p.insert(to_exps(m));
    return p;
}

inline hitcalc::Polynomial from_poly(const oracle::Poly& p, int arity, int degree)
{
    std::vector<hitcalc::Monomial> terms;
    for (const auto& e : p) terms.push_back(from_exps(e));
    return hitcalc::Polynomial::from_terms(arity, degree, std::move(terms));
}

inline hitcalc::Monomial random_monomial(std::mt19937_64& rng, int t, int n)
{
    std::vector<int> cuts;
    std::uniform_int_distribution<int> d(0, n);
    for (int k = 0; k + 1 < t; ++k) cuts.push_back(d(rng));
    cuts.push_back(0);
    cuts.push_back(n);
    std::sort(cuts.begin(), cuts.end());
    hitcalc::Monomial m(t);
    for (int j = 0; j < t; ++j) m.set(j, cuts[static_cast<std::size_t>(j + 1)] - cuts[static_cast<std::size_t>(j)]);
    return m;
}

}  // namespace testing_support
