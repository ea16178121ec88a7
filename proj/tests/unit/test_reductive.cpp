#include <doctest.h>

#include "orbitcheck/commutant.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/reductive.hpp"

using namespace orbitcheck;

namespace {

std::vector<int> dims(const ReductiveSpace& sp) {
  std::vector<int> out;
  for (const auto& m : sp.modules) out.push_back(m.dim());
  return out;
}

// Dimension of the equivariant symmetric operators on m from the full linear
// system S R_a = R_a S over symmetric S, solved directly (independent of the
// eigenspace-based commutant routine). Only for small m.
int brute_metric_dim(const ReductiveSpace& sp) {
  auto ops = isotropy_ops(sp.h, sp.m);
  const int d = sp.m.dim();
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) idx.push_back({i, j});
  const int n = static_cast<int>(idx.size());
  Matrix sys(static_cast<Eigen::Index>(ops.size()) * d * d, n);
  sys.setZero();
  for (int c = 0; c < n; ++c) {
    Matrix s = Matrix::Zero(d, d);
    s(idx[c].first, idx[c].second) = s(idx[c].second, idx[c].first) = 1;
    for (size_t a = 0; a < ops.size(); ++a) {
      Matrix r = s * ops[a] - ops[a] * s;
      sys.block(static_cast<Eigen::Index>(a) * d * d, c, d * d, 1) = Eigen::Map<const Vector>(r.data(), d * d);
    }
  }
  return n - numerical_rank(sys, 1e-9);
}

}  // namespace

TEST_CASE("so(5)/u(2) splits into modules of dimensions 2 and 4") {
  auto sp = space_from_chain(named_embedding("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}}));
  CHECK(sp.m.dim() == 6);
  CHECK(dims(sp) == std::vector<int>{2, 4});
  CHECK(sp.ordering == "chain");
  CHECK(sp.exact());
  CHECK(sp.modules[0].exact());
  CHECK(sp.metric_space_dim == 2);
  CHECK(brute_metric_dim(sp) == 2);
  CHECK(sp.module_residual <= 1e-10);
  CHECK_FALSE(sp.isotypic_pair());
}

TEST_CASE("so(3)^3 / diag has dim m = 6") {
  auto c = named_embedding("diag_3(f)");
  auto sp = space_from_chain(c);
  CHECK(sp.m.dim() == 6);
  CHECK(dims(sp) == std::vector<int>{3, 3});
  CHECK(sp.isotypic_pair());
  CHECK(sp.metric_space_dim == brute_metric_dim(sp));
}

TEST_CASE("full subalgebra is rejected as not almost effective") {
  auto su2 = classical_algebra("su", 2);
  auto e = make_embedding(su2, su2, QMatrix::identity(3), "id");
  CHECK_THROWS_AS(reductive_space(e), InputError);
  auto so3 = classical_algebra("so", 3);
  auto g = std::make_shared<const LieAlgebra>(direct_sum({so3, so3}));
  QMatrix m(6, 3);
  for (int i = 0; i < 3; ++i) m(i, i) = 1;
  auto first = make_embedding(so3, g, m, "first factor");
  CHECK_THROWS_AS(reductive_space(first), InputError);
}

TEST_CASE("so(8)/g2 has two isomorphic 7-dimensional modules") {
  auto sp = space_from_chain(named_embedding("g2_in_so(7)_in_so(8)"));
  CHECK(dims(sp) == std::vector<int>{7, 7});
  CHECK(sp.isotypic_pair());
  CHECK(sp.metric_space_dim == 3);
}

TEST_CASE("su(3)/su(2) splits as 1 + 4") {
  auto sp = space_from_chain(named_embedding("su(n)_in_u(n)_in_su(n+1)", {{"n", "2"}}));
  CHECK(sp.m.dim() == 5);
  CHECK(dims(sp) == std::vector<int>{1, 4});
  CHECK(sp.metric_space_dim == 2);
  CHECK(brute_metric_dim(sp) == 2);
}

TEST_CASE("decomposition without a chain orders by subalgebra then dimension") {
  Chain c = named_embedding("u(k)_in_so(2k)_in_so(2k+1)", {{"k", "2"}});
  auto sp = reductive_space(c.h_in_g);
  decompose_isotropy(sp, 3);
  CHECK(dims(sp) == std::vector<int>{2, 4});
  CHECK(sp.ordering == "subalgebra");
  CHECK(sp.modules[0].exact());  // recovered exactly from the float projector
}

TEST_CASE("sp(3)/principal su(2) splits as 7 + 11") {
  auto sp = space_from_chain(named_embedding("principal_su2_in_sp(3)"));
  CHECK(dims(sp) == std::vector<int>{7, 11});
  CHECK(sp.metric_space_dim == 2);
  CHECK_FALSE(sp.exact());
}

TEST_CASE("metric space dimension does not depend on the seed") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto v10 = space_from_chain(named_embedding("principal_su2_in_sp(3)"), seed);
    CHECK(v10.metric_space_dim == 2);
    auto g2 = space_from_chain(named_embedding("g2_in_so(7)_in_so(8)"), seed);
    CHECK(g2.metric_space_dim == 3);
  }
}

TEST_CASE("irreducibility certificate: symmetric commutant of each module is scalar") {
  auto sp = space_from_chain(named_embedding("sp(n)_and_sp(1)_in_sp(n+1)", {{"n", "1"}}));
  CHECK(dims(sp) == std::vector<int>{2, 4});
  for (const auto& mod : sp.modules) {
    auto ops = isotropy_ops(sp.h, mod);
    CHECK(symmetric_part(commutant(ops, 5)).size() == 1);
  }
}

TEST_CASE("ideals of a direct sum") {
  auto so3 = classical_algebra("so", 3);
  auto su3 = classical_algebra("su", 3);
  auto t = classical_algebra("torus", 1);
  auto g = std::make_shared<const LieAlgebra>(direct_sum({so3, su3, t}));
  auto id = ideals(g);
  CHECK(id.center.dim() == 1);
  REQUIRE(id.simple.size() == 2);
  CHECK(id.simple[0].dim() == 3);
  CHECK(id.simple[1].dim() == 8);
  CHECK(id.simple[0].exact());
}

TEST_CASE("structure classifier covers the seven cases") {
  struct Example {
    const char* name;
    int label;
  };
  for (auto ex : {Example{"diag_3(f)", 1}, Example{"so(2)xso(2)_in_so(3)xso(3)", 2},
                  Example{"diag_2(so(3))xso(2)_in_so(3)^3", 3}, Example{"twisted_so(3)_in_su(3)xso(3)", 4},
                  Example{"twisted_so(2)_in_so(3)xR", 4}, Example{"trivial_in_torus(2)", 5},
                  Example{"so(2)_in_Rxso(3)", 6}, Example{"u(k)_in_so(2k)_in_so(2k+1)", 7}}) {
    CAPTURE(ex.name);
    Chain c = named_embedding(ex.name);
    auto rep = classify_structure(c.h_in_g);
    CHECK(rep.case_label == ex.label);
    CHECK(rep.inequality_lhs <= 2);
    // Every example here really has two summands.
    auto sp = space_from_chain(c);
    CHECK(sp.modules.size() == 2);
  }
}

TEST_CASE("trivial isotropy blocks split into lines") {
  // so(5)/su(2): su(2) acts trivially on so(4) minus su(2); the float operators are roundoff.
  auto sp = space_from_chain(named_embedding("su(2n)_in_so(4n)_in_so(4n+1)", {{"n", "1"}}));
  std::vector<int> dims;
  for (const auto& m : sp.modules) dims.push_back(m.dim());
  CHECK(dims == std::vector<int>{1, 1, 1, 4});
  CHECK(sp.metric_space_dim == 7);
}
