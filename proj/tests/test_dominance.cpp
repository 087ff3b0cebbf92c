#include <gtest/gtest.h>

#include <random>

#include "frontsel/dominance.hpp"
#include "oracles.hpp"

using namespace frontsel;

namespace {

std::vector<ObjectiveSpec<double>> minimize(std::size_t k) {
  std::vector<ObjectiveSpec<double>> s;
  for (std::size_t i = 0; i < k; ++i) s.push_back({"f" + std::to_string(i), Direction::Minimize, {}, {}, {}});
  return s;
}

CandidateSet<double> make_set(const Matrix<double> &m, std::vector<ObjectiveSpec<double>> specs = {}) {
  if (specs.empty()) specs = minimize(static_cast<std::size_t>(m.cols()));
  std::vector<std::string> ids;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03d", static_cast<int>(i));
    ids.push_back(buf);
  }
  return CandidateSet<double>(std::move(specs), std::move(ids), m);
}

Matrix<double> random_matrix(std::mt19937_64 &rng, Eigen::Index n, Eigen::Index k, bool coarse) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> grid(0, 4);
  Matrix<double> m(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < k; ++c) m(i, c) = coarse ? grid(rng) / 4.0 : u(rng);
  }
  return m;
}

std::vector<std::string> oracle_ids(const CandidateSet<double> &set) {
  std::vector<std::string> ids;
  for (auto r : oracle::brute_frontier(set.oriented())) ids.push_back(set.ids()[r]);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Vector<double> v2(double a, double b) {
  Vector<double> v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(Dominates, Examples) {
  EXPECT_TRUE(dominates(v2(1, 1), v2(2, 2)));
  EXPECT_FALSE(dominates(v2(1, 1), v2(1, 1)));
  EXPECT_FALSE(dominates(v2(1, 3), v2(3, 1)));
  EXPECT_FALSE(dominates(v2(3, 1), v2(1, 3)));
  EXPECT_TRUE(dominates(v2(1, 2), v2(1, 3)));
}

TEST(Dominates, LengthMismatchThrows) {
  Vector<double> three(3);
  three << 1, 2, 3;
  EXPECT_THROW(dominates(v2(1, 1), three), InputError);
}

TEST(Dominates, IsAStrictPartialOrder) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> g(0, 3);
  int transitive_checks = 0;
  for (int t = 0; t < 20000; ++t) {
    Vector<double> a(3), b(3), c(3);
    for (int i = 0; i < 3; ++i) {
      a(i) = g(rng);
      b(i) = g(rng);
      c(i) = g(rng);
    }
    EXPECT_FALSE(dominates(a, a));
    if (dominates(a, b)) {
      EXPECT_FALSE(dominates(b, a));
    }
    if (dominates(a, b) && dominates(b, c)) {
      EXPECT_TRUE(dominates(a, c));
      ++transitive_checks;
    }
  }
  EXPECT_GT(transitive_checks, 100);
}

TEST(ParetoFrontier, SmallExamples) {
  Matrix<double> m(3, 2);
  m << 1, 2, 2, 1, 2, 2;
  const auto set = make_set(m);
  EXPECT_EQ(pareto_frontier(set).member_ids, (std::vector<std::string>{"p000", "p001"}));

  Matrix<double> one(1, 3);
  one << 4, 5, 6;
  EXPECT_EQ(pareto_frontier(make_set(one)).member_ids, (std::vector<std::string>{"p000"}));
}

TEST(ParetoFrontier, DuplicatesBothSurvive) {
  Matrix<double> m(3, 2);
  m << 1, 1, 1, 1, 2, 2;
  EXPECT_EQ(pareto_frontier(make_set(m)).member_ids, (std::vector<std::string>{"p000", "p001"}));
  EXPECT_EQ(pareto_frontier_2d(make_set(m)).member_ids, (std::vector<std::string>{"p000", "p001"}));
}

TEST(ParetoFrontier, RespectsMaximizeDirection) {
  Matrix<double> m(3, 2);
  m << 0.9, 5, 0.5, 5, 0.95, 6;
  auto specs = minimize(2);
  specs[0].direction = Direction::Maximize;
  EXPECT_EQ(pareto_frontier(make_set(m, specs)).member_ids, (std::vector<std::string>{"p000", "p002"}));
}

TEST(ParetoFrontier, MatchesAllPairsOracleOnRandomSets) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 250; ++trial) {
    const Eigen::Index n = 1 + trial % 64;
    const Eigen::Index k = 1 + trial % 4;
    const auto set = make_set(random_matrix(rng, n, k, trial % 3 == 0));
    const auto f = pareto_frontier(set);
    EXPECT_EQ(f.member_ids, oracle_ids(set)) << "trial " << trial;
    for (const auto &id : set.ids()) {
      if (f.contains(id)) continue;
      const auto i = *set.index_of(id);
      bool covered = false;
      for (auto r : f.rows) covered = covered || dominates(set.oriented().row(r), set.oriented().row(i));
      EXPECT_TRUE(covered);
    }
  }
}

TEST(ParetoFrontier, SweepMatchesAllPairsForTwoObjectives) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto set = make_set(random_matrix(rng, 1 + trial % 64, 2, trial % 2 == 0));
    EXPECT_EQ(pareto_frontier_2d(set).member_ids, pareto_frontier(set).member_ids) << "trial " << trial;
  }
}

TEST(ParetoFrontier, InvariantUnderObjectivePermutationAndFlips) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index k = 2 + trial % 3;
    const Matrix<double> m = random_matrix(rng, 30, k, trial % 2 == 0);
    auto specs = minimize(static_cast<std::size_t>(k));
    specs[0].direction = Direction::Maximize;
    const auto base = pareto_frontier(make_set(m, specs)).member_ids;

    // reverse objective order
    Matrix<double> rev = m.rowwise().reverse();
    std::vector<ObjectiveSpec<double>> rspecs(specs.rbegin(), specs.rend());
    EXPECT_EQ(pareto_frontier(make_set(rev, rspecs)).member_ids, base);

    // negate the maximized column and mark it minimized
    Matrix<double> flipped = m;
    flipped.col(0) *= -1;
    auto fspecs = specs;
    fspecs[0].direction = Direction::Minimize;
    EXPECT_EQ(pareto_frontier(make_set(flipped, fspecs)).member_ids, base);
  }
}

TEST(EmpiricalPoints, UtopiaAndNadir) {
  Matrix<double> m(2, 2);
  m << 1, 5, 3, 2;
  const auto set = make_set(m);
  EXPECT_EQ(empirical_utopia(set), v2(1, 2));
  EXPECT_EQ(empirical_nadir(set), v2(3, 5));

  Matrix<double> one(1, 2);
  one << 7, 8;
  EXPECT_EQ(empirical_utopia(make_set(one)), v2(7, 8));
  EXPECT_EQ(empirical_nadir(make_set(one)), v2(7, 8));
}

TEST(EmpiricalPoints, GoodreadsColumnMaxima) {
  Matrix<double> m(5, 2);
  m << 0.0384, 0.0485, 0.0433, 0.0443, 0.0503, 0.0363, 0.0822, 0.0108, 0.0827, 0.0096;
  std::vector<ObjectiveSpec<double>> specs{{"recall", Direction::Maximize, {}, {}, {}},
                                           {"aplt", Direction::Maximize, {}, {}, {}}};
  EXPECT_EQ(empirical_utopia(make_set(m, specs)), v2(0.0827, 0.0485));
  EXPECT_EQ(empirical_nadir(make_set(m, specs)), v2(0.0384, 0.0096));
}

TEST(EmpiricalPoints, BoundEveryCandidate) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto specs = minimize(3);
    specs[1].direction = Direction::Maximize;
    const auto set = make_set(random_matrix(rng, 20, 3, false), specs);
    const auto u = orient(empirical_utopia(set), specs);
    const auto n = orient(empirical_nadir(set), specs);
    const Matrix<double> o = set.oriented();
    for (Eigen::Index i = 0; i < o.rows(); ++i) {
      EXPECT_TRUE((u.transpose().array() <= o.row(i).array()).all());
      EXPECT_TRUE((o.row(i).array() <= n.transpose().array()).all());
    }
    // restricting to the frontier leaves the utopia unchanged
    EXPECT_EQ(empirical_utopia(set, pareto_frontier(set)), empirical_utopia(set));
  }
}
