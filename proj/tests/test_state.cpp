#include <doctest.h>

#include <cmath>

#include "bellbound/family7.hpp"
#include "bellbound/state.hpp"
#include "test_util.hpp"

using namespace bellbound;
using testutil::random_state;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState bell_pair() {
  return make_state(2, {{"00", kInvSqrt2}, {"11", kInvSqrt2}});
}

PureState critical_state() {
  return make_state(7, {{"0000000", 0.5},
                        {"0001111", 0.5},
                        {"1111000", 0.5},
                        {"1110111", 0.5}});
}

}  // namespace

TEST_CASE("make_state accepts the canonical examples") {
  PureState bell = bell_pair();
  CHECK(bell.qubits() == 2);
  CHECK(bell.amplitude(0).real() == doctest::Approx(kInvSqrt2));
  CHECK(bell.amplitude(3).real() == doctest::Approx(kInvSqrt2));

  PureState crit = critical_state();
  CHECK(crit.amplitude(0b0000000).real() == 0.5);
  CHECK(crit.amplitude(0b0001111).real() == 0.5);
  CHECK(crit.amplitude(0b1111000).real() == 0.5);
  CHECK(crit.amplitude(0b1110111).real() == 0.5);
}

TEST_CASE("make_state error paths") {
  CHECK_THROWS_WITH_AS(make_state(2, {{"00", 1.0}, {"00", 0.1}}),
                       doctest::Contains("twice"), Error);
  CHECK_THROWS_AS(make_state(2, {{"000", 1.0}}), Error);
  CHECK_THROWS_AS(make_state(2, {{"00", 0.9}}), Error);
  CHECK_THROWS_AS(make_state(1, {{"0", 1.0}}), Error);
  CHECK_THROWS_AS(make_state(13, {{"0000000000000", 1.0}}), Error);

  try {
    make_state(2, {{"00", 0.5}});
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("reduced density matrices match the stated examples") {
  DensityMatrix bell_a2 = reduced_density(bell_pair(), Bipartition(2, {2}));
  CHECK(std::abs(bell_a2.mat(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(bell_a2.mat(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(bell_a2.mat(0, 1)) < 1e-14);

  PureState zero2 = make_state(2, {{"00", 1.0}});
  DensityMatrix pure = reduced_density(zero2, Bipartition(2, {1}));
  CHECK(std::abs(pure.mat(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(pure.mat(1, 1)) < 1e-14);

  // Direct 2x2 partial-trace oracle on the four amplitudes: site 7 is |0>
  // for the a1/a3 strings and |1> for a2/a4.
  DensityMatrix crit7 = reduced_density(critical_state(), Bipartition(7, {7}));
  CHECK(std::abs(crit7.mat(0, 0) - (0.25 + 0.25)) < 1e-14);
  CHECK(std::abs(crit7.mat(1, 1) - (0.25 + 0.25)) < 1e-14);
  CHECK(std::abs(crit7.mat(0, 1)) < 1e-14);
}

TEST_CASE("reduced density agrees with the dense partial-trace oracle") {
  for (int n = 2; n <= 5; ++n) {
    PureState state = random_state(n, 100 + n);
    for (int site = 1; site <= n; ++site) {
      std::vector<int> region = {site};
      if (site + 1 <= n && n > 2) region.push_back(site + 1 > n ? 1 : site + 1);
      if (static_cast<int>(region.size()) >= n) region.resize(1);
      DensityMatrix dm = reduced_density(state, Bipartition(n, region));
      dm.validate();
      Eigen::MatrixXcd oracle = testutil::dense_partial_trace(state, region);
      CHECK((dm.mat - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("purity examples and family closed form") {
  PureState zero2 = make_state(2, {{"00", 1.0}});
  CHECK(purity(reduced_density(zero2, Bipartition(2, {1}))) ==
        doctest::Approx(1.0));
  CHECK(purity(reduced_density(bell_pair(), Bipartition(2, {2}))) ==
        doctest::Approx(0.5));

  // alpha^2 = (1/4, 2/5, 1/4, 1/10): purity on A = {7} is
  // (a1^2+a3^2)^2 + (a2^2+a4^2)^2 = 1/4 + 1/4.
  FamilyCoeffs coeffs{{std::sqrt(0.25), std::sqrt(0.4), std::sqrt(0.25),
                       std::sqrt(0.1)}};
  PureState state = state_from_coeffs(coeffs);
  CHECK(purity(reduced_density(state, Bipartition(7, {7}))) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("family purity formula vs matrix oracle on random angles") {
  std::mt19937_64 eng = seeded_engine(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    FamilyAngles angles{uniform01(eng) * 2.0 * 3.141592653589793,
                        uniform01(eng) * 3.141592653589793,
                        uniform01(eng) * 3.141592653589793};
    FamilyCoeffs c = coeffs_from_angles(angles);
    const double a1 = c.alpha[0] * c.alpha[0], a2 = c.alpha[1] * c.alpha[1];
    const double a3 = c.alpha[2] * c.alpha[2], a4 = c.alpha[3] * c.alpha[3];
    const double closed = (a1 + a3) * (a1 + a3) + (a2 + a4) * (a2 + a4);
    double from_matrix =
        purity(reduced_density(state_from_coeffs(c), Bipartition(7, {7})));
    CHECK(std::abs(closed - from_matrix) < 1e-10);
  }
}

TEST_CASE("entropies") {
  PureState zero2 = make_state(2, {{"00", 1.0}});
  DensityMatrix pure = reduced_density(zero2, Bipartition(2, {1}));
  DensityMatrix mixed = reduced_density(bell_pair(), Bipartition(2, {2}));

  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(mixed) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // rho_A for A = {1,2,3} of the critical state is
  // (|000><000| + |111><111|) / 2 by enumerating the four basis terms.
  DensityMatrix crit_abc =
      reduced_density(critical_state(), Bipartition(7, {1, 2, 3}));
  CHECK(von_neumann_entropy(crit_abc) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  SUBCASE("renyi") {
    CHECK(renyi_entropy(mixed, 2.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(renyi_entropy(pure, 0.7) == doctest::Approx(0.0).epsilon(1e-12));
    // diag(3/4, 1/4), alpha = 2: -ln(9/16 + 1/16) = ln(8/5).
    DensityMatrix skew{
        (Eigen::MatrixXcd(2, 2) << 0.75, 0.0, 0.0, 0.25).finished()};
    CHECK(renyi_entropy(skew, 2.0) ==
          doctest::Approx(std::log(1.6)).epsilon(1e-13));
    CHECK_THROWS_AS(renyi_entropy(skew, 0.0), Error);
    CHECK_THROWS_AS(renyi_entropy(skew, -1.0), Error);
  }
}

TEST_CASE("Renyi limit alpha -> 1 matches von Neumann") {
  for (int n = 2; n <= 4; ++n) {
    PureState state = random_state(n, 300 + n);
    DensityMatrix dm = reduced_density(state, Bipartition(n, {1}));
    const double vn = von_neumann_entropy(dm);
    CHECK(std::abs(renyi_entropy(dm, 1.0 + 1e-9) - vn) < 1e-6);
    CHECK(std::abs(renyi_entropy(dm, 1.0 - 1e-9) - vn) < 1e-6);
  }
}

TEST_CASE("concurrence") {
  PureState zero2 = make_state(2, {{"00", 1.0}});
  CHECK(concurrence(zero2, Bipartition(2, {1})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(concurrence(bell_pair(), Bipartition(2, {2})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(critical_state(), Bipartition(7, {7})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("concurrence stays within [0, 1] on single-site cuts") {
  for (int n = 2; n <= 6; ++n) {
    PureState state = random_state(n, 400 + n);
    for (int site = 1; site <= n; ++site) {
      double c = concurrence(state, Bipartition(n, {site}));
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("generalized concurrence") {
  CHECK(generalized_concurrence(bell_pair(), Bipartition(2, {2})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // (|0000> + |1111>)/sqrt(2) on A = {3,4}: purity 1/2, m = 2 gives 0 --
  // rank-2 flat spectrum rather than rank 4. The square root turns the
  // ~1e-16 purity rounding into ~1e-8, hence the absolute tolerance.
  PureState ghz4 = make_state(4, {{"0000", kInvSqrt2}, {"1111", kInvSqrt2}});
  CHECK(generalized_concurrence(ghz4, Bipartition(4, {3, 4})) < 1e-7);

  // Two Bell pairs across the cut: maximally mixed two-qubit reduction.
  PureState two_pairs = make_state(4, {{"0000", 0.5},
                                       {"0101", 0.5},
                                       {"1010", 0.5},
                                       {"1111", 0.5}});
  CHECK(generalized_concurrence(two_pairs, Bipartition(4, {3, 4})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  PureState product = make_state(4, {{"0000", 1.0}});
  CHECK_THROWS_AS(generalized_concurrence(product, Bipartition(4, {1, 2})),
                  Error);
}

TEST_CASE("Schmidt duality and purity consistency") {
  std::mt19937_64 eng = seeded_engine(21, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(uniform01(eng) * 4.999);
    PureState state = random_state(n, 500 + trial);
    std::vector<int> region;
    for (int site = 1; site <= n; ++site) {
      if (uniform01(eng) < 0.5) region.push_back(site);
    }
    if (region.empty()) region.push_back(1);
    if (static_cast<int>(region.size()) == n) region.pop_back();

    Bipartition part(n, region);
    DensityMatrix rho_a = reduced_density(state, part);
    DensityMatrix rho_b = reduced_density(state, Bipartition(n, part.region_b()));

    auto eig_a = rho_a.eigenvalues();
    auto eig_b = rho_b.eigenvalues();
    const std::size_t common = std::min(eig_a.size(), eig_b.size());
    for (std::size_t i = 0; i < common; ++i) {
      CHECK(std::abs(eig_a[i] - eig_b[i]) < 1e-10);
    }
    for (std::size_t i = common; i < eig_a.size(); ++i) {
      CHECK(std::abs(eig_a[i]) < 1e-10);
    }
    for (std::size_t i = common; i < eig_b.size(); ++i) {
      CHECK(std::abs(eig_b[i]) < 1e-10);
    }

    double sum_sq = 0.0;
    for (double lambda : eig_a) sum_sq += lambda * lambda;
    CHECK(std::abs(purity(rho_a) - sum_sq) < 1e-10);
  }
}

TEST_CASE("flat spectrum report on the critical state") {
  FlatSpectrumSummary summary = flat_spectrum_report(critical_state());
  CHECK(summary.reports.size() == 63);
  CHECK(summary.isMaximallyEntangled);
  CHECK_FALSE(summary.rankTrivial);
  for (const auto& rep : summary.reports) {
    CHECK(rep.isFlat);
    CHECK(std::abs(rep.vonNeumann - rep.renyi2) < 1e-9);
    // Flat spectra have entropy ln(rank).
    CHECK(rep.vonNeumann ==
          doctest::Approx(std::log(double(rep.rank))).epsilon(1e-9));
    int min_side = std::min(rep.part.size_a(), 7 - rep.part.size_a());
    CHECK(rep.vonNeumann <= min_side * std::log(2.0) + 1e-9);
  }
  // Site cuts are maximally mixed; the 3-site cut {1,2,3} is flat at rank 2,
  // which is below 2^3, so the strict maximally-mixed reading fails there.
  CHECK(summary.reports.front().isMaxFlat);
  for (const auto& rep : summary.reports) {
    if (rep.part.region_a() == std::vector<int>{1, 2, 3}) {
      CHECK(rep.rank == 2);
      CHECK_FALSE(rep.isMaxFlat);
    }
  }
}

TEST_CASE("flat spectrum report flags a non-flat family point") {
  FamilyCoeffs coeffs{{std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2), 0.0}};
  FlatSpectrumSummary summary =
      flat_spectrum_report(state_from_coeffs(coeffs));
  CHECK_FALSE(summary.isMaximallyEntangled);
  for (const auto& rep : summary.reports) {
    if (rep.part.region_a() == std::vector<int>{7}) {
      CHECK(rep.eigenvalues[0] == doctest::Approx(0.7).epsilon(1e-12));
      CHECK(rep.eigenvalues[1] == doctest::Approx(0.3).epsilon(1e-12));
      CHECK_FALSE(rep.isFlat);
    }
  }
}

TEST_CASE("flat spectrum report on a product state is rank-trivial") {
  PureState product = make_state(4, {{"0110", 1.0}});
  FlatSpectrumSummary summary = flat_spectrum_report(product);
  CHECK(summary.isMaximallyEntangled);  // flat reading: all spectra are {1}
  CHECK(summary.rankTrivial);
  for (const auto& rep : summary.reports) {
    CHECK(rep.rank == 1);
    CHECK(rep.vonNeumann == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("flatness is equivalent to matching Renyi orders") {
  // Flat and non-flat inputs; isFlat must coincide with
  // |S - S_2| <= 1e-9 and |S_2 - S_3| <= 1e-9.
  std::vector<PureState> states = {critical_state(), bell_pair(),
                                   random_state(4, 7), random_state(5, 8),
                                   make_state(3, {{"000", 1.0}})};
  for (const auto& state : states) {
    FlatSpectrumSummary summary = flat_spectrum_report(state);
    for (const auto& rep : summary.reports) {
      DensityMatrix dm = reduced_density(state, rep.part);
      const double s1 = von_neumann_entropy(dm);
      const double s2 = renyi_entropy(dm, 2.0);
      const double s3 = renyi_entropy(dm, 3.0);
      const bool renyi_flat =
          std::abs(s1 - s2) <= 1e-9 && std::abs(s2 - s3) <= 1e-9;
      CHECK(rep.isFlat == renyi_flat);
    }
  }
}

TEST_CASE("bipartition validation") {
  CHECK_THROWS_AS(Bipartition(3, {}), Error);
  CHECK_THROWS_AS(Bipartition(3, {1, 2, 3}), Error);
  CHECK_THROWS_AS(Bipartition(3, {0}), Error);
  CHECK_THROWS_AS(Bipartition(3, {4}), Error);
  CHECK_THROWS_AS(reduced_density(bell_pair(), Bipartition(3, {1})), Error);
}
