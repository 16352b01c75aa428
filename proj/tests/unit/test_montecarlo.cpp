#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "hyperslice/montecarlo.hpp"
#include "hyperslice/parallel.hpp"
#include "hyperslice/vertex_sum.hpp"

using namespace hyperslice;

TEST_CASE("CounterRng is deterministic and stream-separated") {
  CounterRng a(1, 0), b(1, 0), c(1, 1), e(2, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != e.next());
  }
}

TEST_CASE("CounterRng moments") {
  CounterRng r(7, 3);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("orthonormal complement") {
  const std::vector<double> raw{0.1, 0.7, 0.2, 0.4};
  const SectionSpec s = make_section_spec(raw, 0.0);
  const auto basis = orthonormal_complement(s.a());
  REQUIRE(basis.size() == 3);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(std::abs(dot(basis[i], s.a())) < 1e-15);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      CHECK(dot(basis[i], basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("halfspace estimate") {
  const std::vector<double> raw{0.3, 0.6, 0.5, 0.2};
  const SectionSpec s = make_section_spec(raw, 0.15);
  const McEstimate m = mc_halfspace_volume(s, 400000, 3);
  const double exact = halfspace_volume(s).value;
  CHECK(m.samples == 400000);
  CHECK(std::abs(m.estimate - exact) <= 4.0 * m.std_error);
}

TEST_CASE("section estimate") {
  for (int d = 3; d <= 6; ++d) {
    const SectionSpec s = SectionSpec::diagonal(d, 0.2);
    const McEstimate m = mc_section_volume(s, 400000, 11);
    const double exact = section_volume_vertex_sum(s).value;
    CHECK(std::abs(m.estimate - exact) <= 4.0 * m.std_error);
    CHECK(m.std_error > 0.0);
  }
}

TEST_CASE("empty cuts are exactly zero") {
  const SectionSpec s = SectionSpec::diagonal(4, 1.5);
  CHECK(mc_section_volume(s, 1000, 1).estimate == 0.0);
  CHECK(mc_halfspace_volume(s, 1000, 1).estimate == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
  const SectionSpec s = SectionSpec::diagonal(5, 0.3);
  setenv("HYPERSLICE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const McEstimate one = mc_section_volume(s, 300000, 9);
  setenv("HYPERSLICE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  const McEstimate three = mc_section_volume(s, 300000, 9);
  unsetenv("HYPERSLICE_THREADS");
  CHECK(one.estimate == three.estimate);
  CHECK(one.hits == three.hits);
}

TEST_CASE("shallow corner uses the tight disc") {
  const SectionSpec s = SectionSpec::diagonal(6, 0.5 * std::sqrt(6.0) - 0.05);
  const McEstimate m = mc_section_volume(s, 200000, 4);
  const double exact = section_volume_vertex_sum(s).value;
  // The section is a small simplex near the far corner; the sampling disc
  // must be sized to it or the run sees no hits at all.
  CHECK(m.hits > 10);
  CHECK(std::abs(m.estimate - exact) <= 4.0 * m.std_error);
}

TEST_CASE("zero hits still report an error bar") {
  const std::vector<double> raw{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.01};
  const SectionSpec s = make_section_spec(raw, 0.5 * sigma(make_section_spec(raw, 0.0).a()) - 1e-4);
  const McEstimate m = mc_section_volume(s, 1000, 2);
  CHECK(m.hits == 0);
  CHECK(m.estimate == 0.0);
  CHECK(m.std_error > 0.0);
}
