#include "matfin/matrix.hpp"
#include "testkit.hpp"

namespace matfin::testkit {

FuncMat Builder::operator()(const Rows& rows) const {
  const RatFunc like = RatFunc::constant(field_->zero(), vars_.size());
  std::vector<std::vector<RatFunc>> entries;
  for (const auto& r : rows) {
    std::vector<RatFunc> row;
    for (const auto& e : r) row.push_back(expr(e));
    entries.push_back(std::move(row));
  }
  return FuncMat::from_rows(entries, like);
}

RatFunc Builder::expr(const std::string& text) const { return parse_expression(text, field_, vars_); }

std::vector<FuncMat> conjugate(const FuncMat& c, const std::vector<FuncMat>& gens) {
  const FuncMat ci = inverse(c);
  std::vector<FuncMat> out;
  for (const auto& g : gens) out.push_back(c * g * ci);
  return out;
}

std::vector<FuncMat> kronecker_gens(const std::vector<FuncMat>& u, const std::vector<FuncMat>& d) {
  const FuncMat iu = FuncMat::identity(u.front().rows(), u.front().like());
  const FuncMat id = FuncMat::identity(d.front().rows(), d.front().like());
  std::vector<FuncMat> out;
  for (const auto& x : u) out.push_back(kronecker(x, id));
  for (const auto& x : d) out.push_back(kronecker(iu, x));
  return out;
}

namespace {

std::vector<FuncMat> plus(std::vector<FuncMat> gens, const FuncMat& extra) {
  gens.push_back(extra);
  return gens;
}

FieldRef f2() { return FieldCtx::prime(2); }
FieldRef f3() { return FieldCtx::prime(3); }
FieldRef f4() { return FieldCtx::make(2, {1, 1, 1}); }
FieldRef f5() { return FieldCtx::prime(5); }
FieldRef f7() { return FieldCtx::prime(7); }
FieldRef f9() { return FieldCtx::make(3, {1, 0, 1}); }
FieldRef f81() { return FieldCtx::make(3, {2, 0, 0, 1, 1}); }  // t^4 + t^3 + 2, primitive

struct Families {
  Builder b2x{f2(), {"X"}};
  Builder b2xy{f2(), {"X", "Y"}};
  Builder b3x{f3(), {"X"}};
  Builder b3xy{f3(), {"X", "Y"}};
  Builder b4x{f4(), {"X"}};
  Builder b4xy{f4(), {"X", "Y"}};
  Builder b5x{f5(), {"X"}};
  Builder b5xy{f5(), {"X", "Y"}};
  Builder b7x{f7(), {"X"}};
  Builder b9xy{f9(), {"X", "Y"}};
  Builder b81x{f81(), {"X"}};

  std::vector<FuncMat> unipotent_pair() const { return {b2x({{"1", "1"}, {"0", "1"}}), b2x({{"1", "X"}, {"0", "1"}})}; }

  std::vector<FuncMat> gl23_conj() const {
    return conjugate(b3x({{"1", "X"}, {"0", "1"}}),
                     {b3x({{"2", "0"}, {"0", "1"}}), b3x({{"-1", "1"}, {"-1", "0"}})});
  }

  std::vector<FuncMat> monomial_gl35_conj() const {
    return conjugate(b5x({{"1", "X", "0"}, {"0", "1", "X^2"}, {"0", "0", "1"}}),
                     {b5x({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "1"}}),
                      b5x({{"0", "1", "0"}, {"0", "0", "1"}, {"1", "0", "0"}}),
                      b5x({{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}})});
  }

  std::vector<FuncMat> diag_t_conj() const {
    return conjugate(b4x({{"1", "X"}, {"0", "1"}}), {b4x({{"t", "0"}, {"0", "1"}})});
  }

  std::vector<FuncMat> sl24_conj() const {
    return conjugate(b4xy({{"1 + X*Y", "X"}, {"Y", "1"}}),
                     {b4xy({{"1", "1"}, {"0", "1"}}), b4xy({{"0", "1"}, {"1", "0"}}), b4xy({{"t", "0"}, {"0", "t^2"}})});
  }

  std::vector<FuncMat> s3_rational() const {
    return conjugate(b2xy({{"X", "X*Y"}, {"0", "1"}}), {b2xy({{"1", "1"}, {"0", "1"}}), b2xy({{"0", "1"}, {"1", "0"}})});
  }

  std::vector<FuncMat> sl25_conj() const {
    return conjugate(b5x({{"1", "X^2 + 1"}, {"0", "1"}}), {b5x({{"1", "1"}, {"0", "1"}}), b5x({{"0", "-1"}, {"1", "0"}})});
  }

  std::vector<FuncMat> cyclic_f81() const {
    return conjugate(b81x({{"1", "X"}, {"0", "1"}}), {b81x({{"t", "0"}, {"0", "1"}})});
  }

  std::vector<FuncMat> s4_conj() const {
    return conjugate(b2x({{"1", "0", "0", "0"}, {"X", "1", "0", "0"}, {"0", "X + 1", "1", "0"}, {"0", "0", "0", "1"}}),
                     {b2x({{"0", "1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}),
                      b2x({{"0", "0", "0", "1"}, {"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}})});
  }

  std::vector<FuncMat> q8_conj() const {
    return conjugate(b3xy({{"1 + X*Y", "X"}, {"Y", "1"}}), {b3xy({{"0", "-1"}, {"1", "0"}}), b3xy({{"1", "1"}, {"1", "-1"}})});
  }

  std::vector<FuncMat> jordan4_conj() const {
    return conjugate(b2x({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"X", "0", "1", "0"}, {"0", "X^2", "0", "1"}}),
                     {b2x({{"1", "1", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "1", "1"}, {"0", "0", "0", "1"}})});
  }

  std::vector<FuncMat> monomial_f7() const {
    return conjugate(b7x({{"1", "X^2 + 1"}, {"0", "1"}}), {b7x({{"3", "0"}, {"0", "1"}}), b7x({{"0", "1"}, {"1", "0"}})});
  }

  std::vector<FuncMat> trivial() const { return {b2x({{"1", "0"}, {"0", "1"}})}; }

  std::vector<FuncMat> constant_gl32() const {
    return {b2x({{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}), b2x({{"0", "0", "1"}, {"1", "0", "1"}, {"0", "1", "0"}})};
  }

  std::vector<FuncMat> block_gl23() const {
    return {b3x({{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}), b3x({{"-1", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "1"}}),
            b3x({{"1", "0", "X"}, {"0", "1", "0"}, {"0", "0", "1"}})};
  }

  std::vector<FuncMat> unipotent_abelian_f5() const {
    return {b5xy({{"1", "X", "Y"}, {"0", "1", "0"}, {"0", "0", "1"}}), b5xy({{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
            b5xy({{"1", "0", "1"}, {"0", "1", "0"}, {"0", "0", "1"}})};
  }

  std::vector<FuncMat> heisenberg_f2() const {
    return {b2x({{"1", "X", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}), b2x({{"1", "0", "0"}, {"0", "1", "X"}, {"0", "0", "1"}})};
  }

  std::vector<FuncMat> heisenberg_f4() const {
    return {b4x({{"1", "X", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}), b4x({{"1", "0", "0"}, {"0", "1", "X"}, {"0", "0", "1"}})};
  }

  std::vector<FuncMat> kron_u_d_f3() const {
    return kronecker_gens({b3x({{"1", "X"}, {"0", "1"}}), b3x({{"1", "1"}, {"0", "1"}})}, {b3x({{"2", "0"}, {"0", "1"}})});
  }

  std::vector<FuncMat> kron_u_d_f4() const {
    return kronecker_gens({b4x({{"1", "X"}, {"0", "1"}}), b4x({{"1", "t"}, {"0", "1"}})}, {b4x({{"t", "0"}, {"0", "1"}})});
  }

  std::vector<FuncMat> kron_heis_d_f4() const { return kronecker_gens(heisenberg_f4(), {b4x({{"t", "0"}, {"0", "1"}})}); }

  std::vector<FuncMat> kron_u_d_f9_conj() const {
    auto g = kronecker_gens({b9xy({{"1", "X"}, {"0", "1"}}), b9xy({{"1", "Y"}, {"0", "1"}})}, {b9xy({{"t", "0"}, {"0", "1"}})});
    return conjugate(b9xy({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"X", "0", "1", "0"}, {"0", "0", "0", "1"}}), g);
  }

  std::vector<FuncMat> kron_d_u_f5() const {
    return kronecker_gens({b5x({{"2", "0"}, {"0", "3"}})}, {b5x({{"1", "X"}, {"0", "1"}})});
  }
};

}  // namespace

std::vector<BatteryGroup> decision_battery() {
  Families f;
  std::vector<BatteryGroup> out;
  auto add = [&](std::string name, std::string family, const Builder& b, std::vector<FuncMat> gens) {
    out.push_back({std::move(name), std::move(family), b.group(std::move(gens))});
  };

  add("unipotent_pair", "conjugate", f.b2x, f.unipotent_pair());
  add("gl23_conj", "conjugate", f.b3x, f.gl23_conj());
  add("monomial_gl35_conj", "conjugate", f.b5x, f.monomial_gl35_conj());
  add("diag_t_conj", "conjugate", f.b4x, f.diag_t_conj());
  add("sl24_conj", "conjugate", f.b4xy, f.sl24_conj());
  add("s3_rational", "conjugate", f.b2xy, f.s3_rational());
  add("sl25_conj", "conjugate", f.b5x, f.sl25_conj());
  add("cyclic_f81", "conjugate", f.b81x, f.cyclic_f81());
  add("s4_conj", "conjugate", f.b2x, f.s4_conj());
  add("q8_conj", "conjugate", f.b3xy, f.q8_conj());
  add("jordan4_conj", "conjugate", f.b2x, f.jordan4_conj());
  add("monomial_f7", "conjugate", f.b7x, f.monomial_f7());
  add("trivial", "conjugate", f.b2x, f.trivial());
  add("constant_gl32", "conjugate", f.b2x, f.constant_gl32());
  add("block_gl23", "block", f.b3x, f.block_gl23());
  add("unipotent_abelian_f5", "block", f.b5xy, f.unipotent_abelian_f5());
  add("heisenberg_f2", "block", f.b2x, f.heisenberg_f2());
  add("kron_u_d_f3", "kronecker", f.b3x, f.kron_u_d_f3());
  add("kron_u_d_f4", "kronecker", f.b4x, f.kron_u_d_f4());
  add("kron_heis_d_f4", "kronecker", f.b4x, f.kron_heis_d_f4());
  add("kron_u_d_f9_conj", "kronecker", f.b9xy, f.kron_u_d_f9_conj());
  add("kron_d_u_f5", "kronecker", f.b5x, f.kron_d_u_f5());

  add("diagX_f3", "infinite", f.b3x, {f.b3x({{"X", "0"}, {"0", "1"}})});
  add("unipotent_pair_plus_diag", "infinite", f.b2x, plus(f.unipotent_pair(), f.b2x({{"X", "0"}, {"0", "1"}})));
  add("gl23_conj_plus_tri", "infinite", f.b3x, plus(f.gl23_conj(), f.b3x({{"1", "X"}, {"0", "X + 1"}})));
  add("kron_u_d_f3_plus_tri", "infinite", f.b3x,
      plus(f.kron_u_d_f3(), f.b3x({{"X", "1", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}})));
  add("sl24_conj_plus_tri", "infinite", f.b4xy, plus(f.sl24_conj(), f.b4xy({{"1", "0"}, {"X", "Y"}})));
  add("monomial_gl35_plus_tri", "infinite", f.b5x,
      plus(f.monomial_gl35_conj(), f.b5x({{"1", "X", "0"}, {"0", "1", "0"}, {"0", "0", "X"}})));
  add("kron_heis_d_f4_plus_tri", "infinite", f.b4x,
      plus(f.kron_heis_d_f4(), f.b4x({{"X", "1", "0", "0", "0", "0"},
                                      {"0", "1", "0", "0", "0", "0"},
                                      {"0", "0", "1", "0", "0", "0"},
                                      {"0", "0", "0", "1", "0", "0"},
                                      {"0", "0", "0", "0", "1", "0"},
                                      {"0", "0", "0", "0", "0", "1"}})));
  add("diag_X_Xinv_f2", "infinite", f.b2x, {f.b2x({{"X", "0"}, {"0", "1/X"}})});
  add("transvections_f2", "infinite", f.b2x, {f.b2x({{"1", "X"}, {"0", "1"}}), f.b2x({{"1", "0"}, {"X", "1"}})});
  add("cyclic_f81_plus_tri", "infinite", f.b81x, plus(f.cyclic_f81(), f.b81x({{"X", "0"}, {"0", "1"}})));
  add("block_gl23_plus_tri", "infinite", f.b3x,
      plus(f.block_gl23(), f.b3x({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "X"}})));
  return out;
}

std::vector<BatteryGroup> nilpotent_battery() {
  Families f;
  std::vector<BatteryGroup> out;
  auto add = [&](std::string name, std::string family, const Builder& b, std::vector<FuncMat> gens) {
    out.push_back({std::move(name), std::move(family), b.group(std::move(gens))});
  };
  add("unipotent_pair", "unipotent", f.b2x, f.unipotent_pair());
  add("diag_t_conj", "diagonalizable", f.b4x, f.diag_t_conj());
  add("jordan4_conj", "unipotent", f.b2x, f.jordan4_conj());
  add("q8_conj", "p-group", f.b3xy, f.q8_conj());
  add("heisenberg_f2", "unipotent", f.b2x, f.heisenberg_f2());
  add("unipotent_abelian_f5", "unipotent", f.b5xy, f.unipotent_abelian_f5());
  add("kron_u_d_f3", "kronecker", f.b3x, f.kron_u_d_f3());
  add("kron_u_d_f4", "kronecker", f.b4x, f.kron_u_d_f4());
  add("kron_heis_d_f4", "kronecker", f.b4x, f.kron_heis_d_f4());
  add("kron_u_d_f9_conj", "kronecker", f.b9xy, f.kron_u_d_f9_conj());
  add("kron_d_u_f5", "kronecker", f.b5x, f.kron_d_u_f5());
  add("cyclic_f81", "diagonalizable", f.b81x, f.cyclic_f81());
  add("trivial", "trivial", f.b2x, f.trivial());

  add("diagX_f3", "infinite", f.b3x, {f.b3x({{"X", "0"}, {"0", "1"}})});
  add("diag_X_Xinv_f2", "infinite", f.b2x, {f.b2x({{"X", "0"}, {"0", "1/X"}})});
  add("diag_pair_f5", "infinite", f.b5xy, {f.b5xy({{"X", "0"}, {"0", "1"}}), f.b5xy({{"1", "0"}, {"0", "Y"}})});
  add("jordan_X_f3", "infinite", f.b3x, {f.b3x({{"X", "1"}, {"0", "X"}})});
  add("kron_u_d_f3_scalar", "infinite", f.b3x,
      plus(f.kron_u_d_f3(), f.b3x({{"X", "0", "0", "0"}, {"0", "X", "0", "0"}, {"0", "0", "X", "0"}, {"0", "0", "0", "X"}})));
  add("kron_heis_diagX_f2", "infinite", f.b2x, kronecker_gens(f.heisenberg_f2(), {f.b2x({{"X", "0"}, {"0", "1"}})}));
  add("unipotent_times_X_f2", "infinite", f.b2x, {f.b2x({{"1", "X"}, {"0", "1"}}), f.b2x({{"X", "0"}, {"0", "X"}})});
  return out;
}

}  // namespace matfin::testkit
