#include <jcr/meanfield/eta0.hpp>
#include <jcr/meanfield/steady_state.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace jcr;

namespace {
ModelParams scaled(double eta, double eps_bar, double kappa_bar, double delta_bar, double delta0_bar) {
    return unscale_params({eps_bar, kappa_bar, delta_bar, delta0_bar}, 1.0, eta);
}

void expect_valid(const SteadyStateSet& set) {
    for (const auto& b : set.branches) {
        EXPECT_LE(std::abs(b.zeta), 1.0 + 1e-10);
        EXPECT_LE(b.residual_conservation, 1e-9) << "zeta=" << b.zeta;
        EXPECT_LE(steady_state_residual(b, set.params), 1e-9) << "zeta=" << b.zeta;
        EXPECT_LE(b.residual_poly, 1e-9);
    }
    for (std::size_t k = 1; k < set.branches.size(); ++k) EXPECT_LE(set.branches[k - 1].zeta, set.branches[k].zeta);
}
}  // namespace

TEST(SteadyState, UndrivenLosslessRotatingWave) {
    ModelParams p;
    p.lambda = std::sqrt(2.0);
    p.delta = p.delta0 = 1.0;
    const auto set = solve_steady_states(p);
    ASSERT_EQ(set.branches.size(), 3u);
    EXPECT_EQ(set.branches[0].zeta, -1.0);
    EXPECT_NEAR(set.branches[1].zeta, -0.5, 1e-15);
    EXPECT_EQ(set.branches[2].zeta, 1.0);
    EXPECT_EQ(set.branches[1].multiplicity, 2);
    EXPECT_TRUE(set.branches[1].z2_partner);
    EXPECT_TRUE(set.branches[1].degenerate);
    EXPECT_NEAR(set.branches[1].intensity(), 0.375, 1e-14);
    EXPECT_NEAR(std::abs(set.branches[1].beta / set.branches[1].alpha), 2.0 * p.delta / p.lambda, 1e-14);
    expect_valid(set);
}

TEST(SteadyState, UndrivenPhotonNumberLaw) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams p;
        p.delta = p.delta0 = u(rng);
        p.lambda = p.delta * (1.0 + u(rng));
        const auto set = solve_steady_states(p);
        ASSERT_EQ(set.branches.size(), 3u);
        const double l2 = p.lambda * p.lambda, d2 = p.delta * p.delta;
        EXPECT_NEAR(set.branches[1].intensity(), (l2 * l2 - d2 * d2) / (4.0 * l2 * d2), 1e-10);
        EXPECT_NEAR(set.branches[1].zeta, -d2 / l2, 1e-14);
    }
}

TEST(SteadyState, UndrivenZ2PartnerIsSteady) {
    ModelParams p;
    p.lambda = 1.0;
    p.eta = 0.6;
    p.kappa = 0.1;
    p.delta = p.delta0 = 0.5;
    const auto set = solve_steady_states(p);
    expect_valid(set);
    int nontrivial = 0;
    for (const auto& b : set.branches) {
        if (std::abs(b.alpha) == 0.0) continue;
        ++nontrivial;
        EXPECT_TRUE(b.z2_partner);
        EXPECT_GE(b.alpha.real(), 0.0);
        EXPECT_EQ(b.multiplicity, 2);
        const MeanFieldState partner{-b.alpha, -b.beta, b.zeta};
        EXPECT_LT(std::abs(maxwell_bloch_rhs(partner, p).alpha), 1e-12);
        EXPECT_LT(std::abs(maxwell_bloch_rhs(partner, p).beta), 1e-12);
    }
    EXPECT_GE(nontrivial, 1);
}

TEST(SteadyState, UndrivenBoundaryRootMerges) {
    ModelParams p;
    p.delta = p.delta0 = 1.0;
    const auto set = solve_steady_states(p);
    ASSERT_EQ(set.branches.size(), 2u);
    EXPECT_EQ(set.branches[0].zeta, -1.0);
    EXPECT_EQ(set.branches[1].zeta, 1.0);
    EXPECT_EQ(set.branches[0].multiplicity, 3);
    EXPECT_FALSE(set.degeneracies.empty());
}

TEST(SteadyState, FourRootsAtModerateCounterRotation) {
    const auto set = solve_steady_states(scaled(0.2, 0.0, 1.0 / 12.0, 0.5, 0.5));
    EXPECT_EQ(set.branches.size(), 4u);
    expect_valid(set);
}

TEST(SteadyState, ZeroTwoStateDetuningBelowCritical) {
    const auto set = solve_steady_states(scaled(0.3, 0.6, 0.05, 0.0, 0.0));
    ASSERT_EQ(set.branches.size(), 2u);
    EXPECT_NEAR(set.branches[0].zeta, -0.8, 1e-15);
    EXPECT_NEAR(set.branches[1].zeta, 0.8, 1e-15);
    for (const auto& b : set.branches) {
        EXPECT_EQ(std::abs(b.alpha), 0.0);
        EXPECT_NEAR(b.beta.real(), -0.6, 1e-15);
        EXPECT_EQ(b.beta.imag(), 0.0);
    }
    expect_valid(set);
}

TEST(SteadyState, ZeroTwoStateDetuningEquatorialClassWithDetuning) {
    // a detuned cavity supports zeta = 0 solutions below the critical drive
    const auto set = solve_steady_states(scaled(0.8, 0.5, 0.05, 0.4, 0.0));
    expect_valid(set);
    int equatorial = 0;
    for (const auto& b : set.branches) equatorial += b.zeta == 0.0;
    EXPECT_GT(equatorial, 0);
}

TEST(SteadyState, EtaOneWithZeroTwoStateDetuningIsDegenerate) {
    EXPECT_THROW(solve_steady_states(scaled(1.0, 0.5, 0.05, 0.3, 0.0)), degenerate_error);
}

TEST(SteadyState, EtaOneResonantCavity) {
    const auto set = solve_steady_states(scaled(1.0, 0.2, 0.05, 0.0, 0.3));
    ASSERT_EQ(set.branches.size(), 2u);
    EXPECT_EQ(set.branches[0].zeta, -1.0);
    EXPECT_EQ(set.branches[1].zeta, 1.0);
    expect_valid(set);
}

TEST(SteadyState, EtaZeroReduction) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-2.0, 2.0), k(0.01, 1.0), e(0.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double db = u(rng), kb = k(rng), eb = e(rng);
        const auto a = solve_steady_states(scaled(0.0, eb, kb, db, db));
        const auto b = solve_steady_states(scaled(1e-12, eb, kb, db, db));
        ASSERT_EQ(a.branches.size(), b.branches.size()) << i;
        for (std::size_t n = 0; n < a.branches.size(); ++n)
            EXPECT_NEAR(a.branches[n].zeta, b.branches[n].zeta, 1e-6);
    }
}

TEST(SteadyState, EtaOneContinuity) {
    for (double db : {-1.0, -0.3, 0.2, 0.7}) {
        const auto a = solve_steady_states(scaled(1.0, 0.4, 0.05, db, db));
        const auto b = solve_steady_states(scaled(1.0 - 1e-9, 0.4, 0.05, db, db));
        ASSERT_EQ(a.branches.size(), b.branches.size());
        for (std::size_t n = 0; n < a.branches.size(); ++n) EXPECT_NEAR(a.branches[n].zeta, b.branches[n].zeta, 1e-6);
    }
}

TEST(SteadyState, RandomDrawsSatisfyAllConditions) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> e(0.0, 1.0), eb(0.0, 1.5), kb(0.01, 1.0), db(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const double d = db(rng);
        const auto set = solve_steady_states(scaled(e(rng), eb(rng), kb(rng), d, i % 3 == 0 ? db(rng) : d));
        expect_valid(set);
        if (set.params.epsilon > 0.0) {
            EXPECT_GE(set.branches.size(), 2u);
        }
    }
}

TEST(SteadyState, NoRootMissedByDenseScan) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> e(0.0, 0.95), eb(0.01, 1.5), kb(0.01, 1.0), db(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double d = db(rng);
        const ModelParams p = scaled(e(rng), eb(rng), kb(rng), d, d);
        const auto set = solve_steady_states(p, {.classify = false});
        for (const auto& iv : oracle::sign_changes([&](double z) { return oracle::sextic_raw(z, p); }, -1.0, 1.0, 20001)) {
            const bool found = std::any_of(set.branches.begin(), set.branches.end(), [&](const MeanFieldBranch& b) {
                return b.zeta >= iv[0] - 1e-9 && b.zeta <= iv[1] + 1e-9;
            });
            EXPECT_TRUE(found) << "draw " << i << " interval " << iv[0];
        }
    }
}

TEST(SteadyState, ReconstructDrivenSolvesLinearSystem) {
    const ModelParams p = scaled(0.4, 0.7, 0.1, -0.6, 0.3);
    for (const auto& b : solve_steady_states(p).branches) {
        const auto d = maxwell_bloch_rhs(b.state(), p);
        EXPECT_LT(std::abs(d.alpha), 1e-12);
        EXPECT_LT(std::abs(d.beta), 1e-12);
    }
}

TEST(AboveCriticalPhase, ExactlyCritical) {
    const auto s = solve_above_critical_phase(scaled(0.3, 1.0, 0.05, 0.0, 0.0));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(std::abs(s[0].phi), std::numbers::pi, 1e-12);
    EXPECT_LT(std::abs(s[0].alpha), 1e-12);
}

TEST(AboveCriticalPhase, TwiceCritical) {
    const auto s = solve_above_critical_phase(scaled(0.3, 2.0, 0.05, 0.0, 0.0));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s[0].phi, -2.0 * std::numbers::pi / 3.0, 1e-12);
    EXPECT_NEAR(s[1].phi, 2.0 * std::numbers::pi / 3.0, 1e-12);
}

TEST(AboveCriticalPhase, BelowCriticalEmpty) {
    EXPECT_TRUE(solve_above_critical_phase(scaled(0.3, 0.9, 0.05, 0.2, 0.0)).empty());
    EXPECT_THROW(solve_above_critical_phase(scaled(0.3, 1.2, 0.05, 0.2, 0.2)), std::domain_error);
}

TEST(AboveCriticalPhase, DetunedMatchesDenseScan) {
    ModelParams p;
    p.lambda = 1.0;
    p.eta = 0.3;
    p.delta = 0.1;
    p.kappa = 0.05;
    p.epsilon = 1.5 * epsilon_crit(1.0, 0.3);
    const double ec = epsilon_crit(1.0, 0.3);
    auto g = [&](double phi) {
        return p.kappa * (1.0 - p.eta) * (p.epsilon * std::cos(phi) + ec) -
               p.delta * std::sin(phi) * (p.epsilon * (1.0 + p.eta) + 2.0 * p.lambda * p.eta * std::cos(phi));
    };
    std::vector<double> ref;
    for (const auto& iv : oracle::sign_changes(g, -std::numbers::pi, std::numbers::pi, 100001))
        ref.push_back(oracle::bisect([&](double x) { return g(iv[0]) < 0.0 ? g(x) : -g(x); }, iv[0], iv[1]));
    const auto s = solve_above_critical_phase(p);
    ASSERT_EQ(s.size(), ref.size());
    for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(s[k].phi, ref[k], 1e-10);
    // each phase pairs with a steady state on the equator
    for (const auto& sol : s) {
        const MeanFieldState st{sol.alpha, std::polar(1.0, sol.phi), 0.0};
        const auto d = maxwell_bloch_rhs(st, p);
        EXPECT_LT(std::abs(d.alpha) + std::abs(d.beta) + std::abs(d.zeta), 1e-12);
    }
}

TEST(StateEquationEta0, VanishingDrive) {
    const auto m = state_equation_eta0(scaled(0.0, 1e-6, 0.01, 0.3, 0.3), InversionSign::minus);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_LT(m[0], 1e-5);
}

TEST(StateEquationEta0, AgreesWithQuartic) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> eb(0.05, 1.5), db(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double d = db(rng);
        const ModelParams p = scaled(0.0, eb(rng), 0.01, d, d);
        const auto set = solve_steady_states(p, {.classify = false});
        std::vector<double> from_set, from_eos;
        for (const auto& b : set.branches) from_set.push_back(std::abs(b.alpha));
        for (auto sg : {InversionSign::minus, InversionSign::plus})
            for (double m : state_equation_eta0(p, sg)) from_eos.push_back(m);
        std::sort(from_set.begin(), from_set.end());
        std::sort(from_eos.begin(), from_eos.end());
        ASSERT_EQ(from_set.size(), from_eos.size()) << i;
        for (std::size_t k = 0; k < from_set.size(); ++k) EXPECT_NEAR(from_set[k], from_eos[k], 1e-7 * (1.0 + from_set[k]));
    }
}

TEST(StateEquationEta0, BistableWindow) {
    int max_minus = 0;
    for (double d = -1.5; d <= 1.5; d += 0.01) {
        const auto m = state_equation_eta0(scaled(0.0, 0.6, 0.01, d, d), InversionSign::minus);
        max_minus = std::max<int>(max_minus, static_cast<int>(m.size()));
    }
    EXPECT_EQ(max_minus, 3);
}

TEST(StateEquationEta0, LargeDriveResonance) {
    const ModelParams p = scaled(0.0, 1.2, 0.01, 0.0, 0.0);
    // delta0 = 0 is outside the rotating-wave state equation
    EXPECT_THROW(state_equation_eta0(p, InversionSign::minus), std::domain_error);
    const ModelParams q = scaled(0.0, 1.2, 0.01, 1e-3, 1e-3);
    const auto m = state_equation_eta0(q, InversionSign::minus);
    const auto set = solve_steady_states(q);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_NEAR(m[0], std::abs(set.branches.front().alpha), 1e-7 * m[0]);
    EXPECT_GT(m[0], 10.0);
}
