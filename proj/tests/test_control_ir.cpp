#include <doctest.h>

#include <cmath>

#include "probectl/control_ir.hpp"
#include "probectl/synthesis.hpp"

using namespace probectl;

namespace {

Program parity_program(const SpectrumSpec& spec) {
  Program p;
  p.spectrum = spec;
  p.words.push_back({WordKind::Conditional, Rotation::about_x(M_PI)});
  return p;
}

}  // namespace

TEST_CASE("spectrum construction") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  CHECK(s.eigenvalues == std::vector<long>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(s.n_qubits == 3);
  CHECK(s.contains(5));
  CHECK(!s.contains(8));

  SpectrumSpec d = SpectrumSpec::from_couplings({1.0, 2.0});
  CHECK(d.eigenvalues == std::vector<long>{0, 1, 2, 3});

  SpectrumSpec deg = SpectrumSpec::from_couplings({1.0, 1.0});
  CHECK(deg.eigenvalues == std::vector<long>{0, 1, 1, 2});
  CHECK(deg.distinct() == std::vector<long>{0, 1, 2});
}

TEST_CASE("integer lattice fit") {
  LatticeFit fit = integer_lattice_fit({-3.0, -1.0, 1.0, 3.0});
  CHECK(fit.offset == doctest::Approx(-3.0));
  CHECK(fit.gap == doctest::Approx(2.0));
  CHECK(fit.integers == std::vector<long>{0, 1, 2, 3});
  CHECK_THROWS_AS(integer_lattice_fit({0.0, 1.0, M_SQRT2}),
                  std::invalid_argument);
}

TEST_CASE("boolfunc builders") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  BoolFunc par = BoolFunc::parity(s);
  CHECK(par(3) == 1);
  CHECK(par(6) == 0);
  BoolFunc ind = BoolFunc::indicator(s, 3, 2);
  CHECK(ind(3) == 1);
  CHECK(ind(7) == 1);
  CHECK(ind(1) == 0);
  CHECK(BoolFunc::point(s, 5)(5) == 1);
  CHECK(BoolFunc::constant(s, 0).is_constant(0));
  CHECK(par.xored(par).is_constant(0));
  CHECK(par.anded(ind)(3) == 1);
  CHECK(par.anded(ind)(7) == 1);
  CHECK(par.anded(ind)(5) == 0);
  CHECK_THROWS_AS(par(99), std::out_of_range);
}

TEST_CASE("word and program evaluation") {
  CHECK(eval_word({WordKind::Conditional, Rotation::about_z(M_PI / 4)}, 8)
            .is_identity());
  CHECK(approx_equal(
      eval_word({WordKind::Conditional, Rotation::about_x(M_PI)}, 3),
      Rotation::about_x(M_PI)));
  Rotation g = Rotation::about_y(0.3);
  CHECK(approx_equal(eval_word({WordKind::Unconditional, g}, 17), g));

  SpectrumSpec s = SpectrumSpec::consecutive(8);
  Program empty;
  empty.spectrum = s;
  CHECK(eval_program(empty, 5).is_identity());
  CHECK(approx_equal(eval_program(parity_program(s), 3),
                     Rotation::about_x(M_PI)));
  CHECK_THROWS_AS(eval_program(empty, 42), std::out_of_range);

  Program octagon = synth_f32_d8(s);
  CHECK(eval_program(octagon, 4).is_identity());
}

TEST_CASE("concat evaluation identity") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  Program p = parity_program(s);
  Program empty;
  empty.spectrum = s;
  for (long j = 0; j < 8; ++j) {
    CHECK(approx_equal(eval_program(concat(p, empty), j), eval_program(p, j)));
    CHECK(eval_program(concat(p, p), j).is_identity());
    CHECK(approx_equal(
        eval_program(concat(p, concat(p, p)), j),
        compose(eval_program(concat(p, p), j), eval_program(p, j))));
  }
  Program other;
  other.spectrum = SpectrumSpec::consecutive(4);
  CHECK_THROWS_AS(concat(p, other), std::invalid_argument);
}

TEST_CASE("xor of indicator programs via concat") {
  SpectrumSpec s = SpectrumSpec::consecutive(4);
  SynthReport a = synth_indicator(s, {1, 1});
  SynthReport b = synth_indicator(s, {2, 2});
  SynthReport both = synth_xor(a, b);
  auto w = realizes(both.program,
                    BoolFunc::indicator(s, 1, 1).xored(BoolFunc::indicator(s, 2, 2)));
  CHECK(w.has_value());
}

TEST_CASE("conjugation moves the witness") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  Program p = parity_program(s);
  BoolFunc par = BoolFunc::parity(s);

  Program same = conjugate_program(p, Rotation());
  CHECK(approx_equal(same.words[0].base, p.words[0].base));

  Program conj = conjugate_program(p, Rotation::about_z(M_PI / 2));
  auto w = realizes(conj, par);
  REQUIRE(w.has_value());
  CHECK(approx_equal(w->u, Rotation::about_y(M_PI)));

  Program back = conjugate_program(conj, Rotation::about_z(-M_PI / 2));
  CHECK(approx_equal(back.words[0].base, p.words[0].base));
}

TEST_CASE("realizes predicate") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  auto w = realizes(parity_program(s), BoolFunc::parity(s));
  REQUIRE(w.has_value());
  CHECK(!w->any);
  CHECK(approx_equal(w->u, Rotation::about_x(M_PI)));

  // The 3-word octagon procedure is state-level only.
  CHECK(!realizes(synth_f32_d8(s), BoolFunc::indicator(s, 3, 2)).has_value());

  Program empty;
  empty.spectrum = s;
  auto w0 = realizes(empty, BoolFunc::constant(s, 0));
  REQUIRE(w0.has_value());
  CHECK(w0->any);
}

TEST_CASE("measures predicate") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  auto a = measures(parity_program(s), BoolFunc::parity(s),
                    Eigen::Vector3d::UnitY());
  REQUIRE(a.has_value());
  CHECK((*a - Eigen::Vector3d::UnitY()).norm() < 1e-9);

  auto oct = measures(synth_f32_d8(s), BoolFunc::indicator(s, 3, 2),
                      octagon_vertex(0));
  CHECK(oct.has_value());

  Program empty;
  empty.spectrum = s;
  auto id = measures(empty, BoolFunc::constant(s, 0), Eigen::Vector3d::UnitZ());
  REQUIRE(id.has_value());
  CHECK((*id - Eigen::Vector3d::UnitZ()).norm() < 1e-12);

  CHECK_THROWS_AS(measures(empty, BoolFunc::constant(s, 0),
                           Eigen::Vector3d(0, 0, 2)),
                  std::invalid_argument);
}

TEST_CASE("realizes implies measures orthogonal to the witness axis") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  Program p = parity_program(s);
  for (const Eigen::Vector3d& s0 :
       {Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0, 0, 1),
        Eigen::Vector3d(0, 1, 1).normalized()}) {
    auto a = measures(p, BoolFunc::parity(s), s0);
    REQUIRE(a.has_value());
    CHECK((*a - s0).norm() < 1e-9);
  }
}

TEST_CASE("step counts") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  StepCount c = step_count(parity_program(s));
  CHECK(c.conditional == 1);
  CHECK(c.unconditional == 0);
  StepCount oct = step_count(synth_f32_d8(s));
  CHECK(oct.conditional == 3);
  CHECK(oct.unconditional == 0);
  Program empty;
  empty.spectrum = s;
  CHECK(step_count(empty).conditional == 0);
  CHECK(step_count(empty).unconditional == 0);
}

TEST_CASE("inserting a cancelling unconditional pair is a no-op") {
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  Program p = synth_f32_d8(s);
  Rotation g = Rotation::about_y(1.1);
  Program padded = p;
  padded.words.push_back({WordKind::Unconditional, g});
  padded.words.push_back({WordKind::Unconditional, g.inverse()});
  for (long j = 0; j < 8; ++j)
    CHECK(distance(eval_program(padded, j), eval_program(p, j)) < 1e-10);
}
