#include <gtest/gtest.h>

#include <random>

#include "frontsel/core.hpp"

using namespace frontsel;

namespace {

std::vector<ObjectiveSpec<double>> specs(std::initializer_list<Direction> dirs) {
  std::vector<ObjectiveSpec<double>> s;
  int i = 0;
  for (auto d : dirs) s.push_back({"f" + std::to_string(i++), d, {}, {}, {}});
  return s;
}

Vector<double> vec(std::initializer_list<double> v) {
  Vector<double> out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(Orient, FlipsMaximizedObjectives) {
  EXPECT_EQ(orient(vec({0.5, 2.0}), specs({Direction::Maximize, Direction::Minimize})), vec({-0.5, 2.0}));
  EXPECT_EQ(orient(vec({0.0, 0.0}), specs({Direction::Minimize, Direction::Minimize})), vec({0.0, 0.0}));
  EXPECT_EQ(orient(vec({0.5179, 18.0544e-6}), specs({Direction::Maximize, Direction::Minimize})),
            vec({-0.5179, 18.0544e-6}));
}

TEST(Orient, LengthMismatchIsInputError) {
  EXPECT_THROW(orient(vec({1, 2, 3}), specs({Direction::Minimize, Direction::Minimize})), InputError);
}

TEST(Orient, TwiceWithAllMaximizeIsIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  const auto s = specs({Direction::Maximize, Direction::Maximize, Direction::Maximize});
  for (int t = 0; t < 50; ++t) {
    const auto v = vec({u(rng), u(rng), u(rng)});
    EXPECT_EQ(orient(orient(v, s), s), v);
  }
}

TEST(Specs, RejectsDuplicateNamesAndNonFiniteWeights) {
  auto s = specs({Direction::Minimize, Direction::Minimize});
  s[1].name = s[0].name;
  EXPECT_THROW(validate_specs(s), InputError);
  s = specs({Direction::Minimize});
  s[0].weight = std::nan("");
  EXPECT_THROW(validate_specs(s), InputError);
  s[0].weight = -3.0;  // sign is unconstrained
  EXPECT_NO_THROW(validate_specs(s));
}

TEST(CandidateSet, ValidatesShapeIdsAndFiniteness) {
  const auto s = specs({Direction::Minimize, Direction::Minimize});
  Matrix<double> m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_NO_THROW(CandidateSet<double>(s, {"a", "b"}, m));
  EXPECT_THROW(CandidateSet<double>(s, {"a", "a"}, m), InputError);
  EXPECT_THROW(CandidateSet<double>(s, {"a"}, m), InputError);
  EXPECT_THROW(CandidateSet<double>(s, {}, Matrix<double>(0, 2)), InputError);
  m(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(CandidateSet<double>(s, {"a", "b"}, m), InputError);
}

TEST(MinMaxNormalize, MapsEndpointsToZeroAndOne) {
  const auto s = specs({Direction::Minimize});
  Matrix<double> m(3, 1);
  m << 1, 3, 5;
  const auto [norm, t] = min_max_normalize(CandidateSet<double>(s, {"a", "b", "c"}, m));
  EXPECT_DOUBLE_EQ(norm.values()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(norm.values()(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(norm.values()(2, 0), 1.0);
  EXPECT_FALSE(t.any_constant());
}

TEST(MinMaxNormalize, ConstantColumnMapsToZeroAndIsFlagged) {
  const auto s = specs({Direction::Minimize, Direction::Maximize});
  Matrix<double> m(3, 2);
  m << 2, 1, 2, 5, 2, 9;
  const auto [norm, t] = min_max_normalize(CandidateSet<double>(s, {"a", "b", "c"}, m));
  EXPECT_TRUE(t.constant[0]);
  EXPECT_FALSE(t.constant[1]);
  EXPECT_TRUE(norm.values().col(0).isZero());
}

TEST(MinMaxNormalize, TwoObjectiveHandExample) {
  const auto s = specs({Direction::Minimize, Direction::Minimize});
  Matrix<double> m(3, 2);
  m << 0, 10, 5, 10, 10, 0;
  Matrix<double> expected(3, 2);
  expected << 0, 1, 0.5, 1, 1, 0;
  const auto [norm, t] = min_max_normalize(CandidateSet<double>(s, {"a", "b", "c"}, m));
  EXPECT_TRUE(norm.values().isApprox(expected));
}

TEST(MinMaxNormalize, PropertiesOnRandomSets) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100, 100);
  const auto s = specs({Direction::Minimize, Direction::Maximize, Direction::Minimize});
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 9;
    Matrix<double> m(n, 3);
    std::vector<std::string> ids;
    for (Eigen::Index i = 0; i < n; ++i) {
      ids.push_back("s" + std::to_string(i));
      for (Eigen::Index c = 0; c < 3; ++c) m(i, c) = u(rng);
    }
    const auto [norm, t] = min_max_normalize(CandidateSet<double>(s, ids, m));
    EXPECT_GE(norm.values().minCoeff(), 0.0);
    EXPECT_LE(norm.values().maxCoeff(), 1.0);
    // re-applying the stored transform reproduces the column exactly
    EXPECT_EQ(t.apply_rows(m), norm.values());
    for (Eigen::Index c = 0; c < 3; ++c) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (m(i, c) < m(j, c)) {
            EXPECT_LE(norm.values()(i, c), norm.values()(j, c));
          }
        }
      }
    }
  }
}

TEST(PopulationSet, RequiresSharedSampleSequence) {
  SamplePopulation<double> a{"A", {"q1", "q2"}, Matrix<double>::Zero(2, 2)};
  SamplePopulation<double> b{"B", {"q2", "q1"}, Matrix<double>::Zero(2, 2)};
  PopulationSet<double> pops;
  pops.add(a);
  EXPECT_THROW(pops.add(b), InputError);
  b.sample_ids = {"q1"};
  b.values = Matrix<double>::Zero(1, 2);
  EXPECT_THROW(pops.add(b), InputError);
  EXPECT_THROW(pops.add(a), InputError);  // duplicate solution
}

TEST(UtopiaAssignment, ResolvesPerSampleAndReportsMissing) {
  std::map<std::string, Vector<double>> rows{{"u1", vec({1, 0.2})}, {"u2", vec({1, 0.9})}};
  const auto u = UtopiaAssignment<double>::per_sample(rows);
  EXPECT_EQ(u.for_sample("u2"), vec({1, 0.9}));
  EXPECT_THROW(u.for_sample("u3"), InputError);
  const auto g = UtopiaAssignment<double>::global(vec({1, 0}));
  EXPECT_EQ(g.for_sample("anything"), vec({1, 0}));
  EXPECT_THROW(UtopiaAssignment<double>::global(vec({1, std::nan("")})), InputError);
}
