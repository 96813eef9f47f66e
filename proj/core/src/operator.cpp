#include "specbox/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "specbox/linalg.hpp"

namespace specbox {

namespace {

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a % b < 0) != (b < 0))) --q;
  return q;
}

std::size_t mod_index(std::int64_t j, std::size_t p) {
  const std::int64_t m = j % static_cast<std::int64_t>(p);
  return static_cast<std::size_t>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
}

void check_block(const CMatrix& value, std::size_t dim) {
  if (value.rows() != dim || value.cols() != dim) {
    throw InvalidArgument("all diagonal blocks must share one square dimension");
  }
}

}  // namespace

DiagonalGen DiagonalGen::constant(CMatrix value) {
  if (!value.is_square() || value.rows() == 0) {
    throw InvalidArgument("block values must be square and nonempty");
  }
  DiagonalGen g;
  g.kind_ = GenKind::Constant;
  g.block_dim_ = value.rows();
  g.default_ = std::move(value);
  return g;
}

DiagonalGen DiagonalGen::periodic(std::vector<CMatrix> values) {
  if (values.empty()) throw InvalidArgument("periodic list must be nonempty");
  DiagonalGen g;
  g.kind_ = GenKind::Periodic;
  g.block_dim_ = values.front().rows();
  if (g.block_dim_ == 0 || !values.front().is_square()) {
    throw InvalidArgument("block values must be square and nonempty");
  }
  for (const CMatrix& v : values) check_block(v, g.block_dim_);
  g.values_ = std::move(values);
  return g;
}

DiagonalGen DiagonalGen::window(std::map<std::int64_t, CMatrix> entries,
                                CMatrix default_value) {
  if (!default_value.is_square() || default_value.rows() == 0) {
    throw InvalidArgument("block values must be square and nonempty");
  }
  DiagonalGen g;
  g.kind_ = GenKind::Window;
  g.block_dim_ = default_value.rows();
  for (const auto& [k, v] : entries) check_block(v, g.block_dim_);
  g.entries_ = std::move(entries);
  g.default_ = std::move(default_value);
  return g;
}

DiagonalGen DiagonalGen::sampled(std::vector<CMatrix> values,
                                 std::int64_t start) {
  if (values.empty()) throw InvalidArgument("sampled range must be nonempty");
  DiagonalGen g;
  g.kind_ = GenKind::Sampled;
  g.block_dim_ = values.front().rows();
  if (g.block_dim_ == 0 || !values.front().is_square()) {
    throw InvalidArgument("block values must be square and nonempty");
  }
  for (const CMatrix& v : values) check_block(v, g.block_dim_);
  g.values_ = std::move(values);
  g.start_ = start;
  return g;
}

const CMatrix& DiagonalGen::at(std::int64_t j) const {
  switch (kind_) {
    case GenKind::Constant:
      return default_;
    case GenKind::Periodic:
      return values_[mod_index(j, values_.size())];
    case GenKind::Window: {
      auto it = entries_.find(j);
      return it == entries_.end() ? default_ : it->second;
    }
    case GenKind::Sampled: {
      const std::int64_t off = j - start_;
      if (off < 0 || off >= static_cast<std::int64_t>(values_.size())) {
        throw IndexOutsideRange("sampled generator queried outside its range");
      }
      return values_[static_cast<std::size_t>(off)];
    }
  }
  throw InvalidArgument("unreachable");
}

bool DiagonalGen::covers(std::int64_t lo, std::int64_t hi) const {
  if (kind_ != GenKind::Sampled) return true;
  return lo >= start_ &&
         hi <= start_ + static_cast<std::int64_t>(values_.size()) - 1;
}

double DiagonalGen::max_norm() const {
  double m = 0.0;
  switch (kind_) {
    case GenKind::Constant:
      return spectral_norm(default_);
    case GenKind::Periodic:
    case GenKind::Sampled:
      for (const CMatrix& v : values_) m = std::max(m, spectral_norm(v));
      return m;
    case GenKind::Window:
      m = spectral_norm(default_);
      for (const auto& [k, v] : entries_) m = std::max(m, spectral_norm(v));
      return m;
  }
  return m;
}

DiagonalGen DiagonalGen::shifted_adjoint(std::int64_t shift) const {
  switch (kind_) {
    case GenKind::Constant:
      return constant(conj_transpose(default_));
    case GenKind::Periodic: {
      std::vector<CMatrix> vals(values_.size());
      for (std::size_t m = 0; m < values_.size(); ++m) {
        vals[m] = conj_transpose(
            values_[mod_index(static_cast<std::int64_t>(m) + shift,
                              values_.size())]);
      }
      return periodic(std::move(vals));
    }
    case GenKind::Window: {
      std::map<std::int64_t, CMatrix> ents;
      for (const auto& [k, v] : entries_) {
        ents.emplace(k - shift, conj_transpose(v));
      }
      return window(std::move(ents), conj_transpose(default_));
    }
    case GenKind::Sampled: {
      std::vector<CMatrix> vals(values_.size());
      for (std::size_t m = 0; m < values_.size(); ++m) {
        vals[m] = conj_transpose(values_[m]);
      }
      return sampled(std::move(vals), start_ - shift);
    }
  }
  throw InvalidArgument("unreachable");
}

OperatorSpec::OperatorSpec(DiagonalGen alpha, DiagonalGen beta,
                           DiagonalGen gamma, std::optional<double> alpha_max,
                           std::optional<double> beta_max,
                           std::optional<double> gamma_max)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  block_dim_ = alpha_.block_dim();
  if (beta_.block_dim() != block_dim_ || gamma_.block_dim() != block_dim_) {
    throw InvalidArgument("all three diagonals must share one block dimension");
  }
  auto resolve = [](const DiagonalGen& g, std::optional<double> user,
                    const char* name) {
    const double computed = g.max_norm();
    if (!user) return computed;
    if (*user < computed - 1e-12 * std::max(1.0, computed)) {
      throw InvalidArgument(std::string(name) +
                            " bound is below the generator's sup norm");
    }
    return *user;
  };
  alpha_max_ = resolve(alpha_, alpha_max, "alpha_max");
  beta_max_ = resolve(beta_, beta_max, "beta_max");
  gamma_max_ = resolve(gamma_, gamma_max, "gamma_max");
}

void OperatorSpec::require_window(std::int64_t lo, std::int64_t hi) const {
  if (!alpha_.covers(lo, hi) || !beta_.covers(lo, hi) || !gamma_.covers(lo, hi)) {
    throw IndexOutsideRange("extraction window outside a sampled range");
  }
}

namespace {

void place_block(CMatrix& m, std::size_t bi, std::size_t bj, std::size_t p,
                 const CMatrix& block, Complex factor = Complex(1.0, 0.0),
                 bool add = false) {
  for (std::size_t u = 0; u < p; ++u) {
    for (std::size_t v = 0; v < p; ++v) {
      Complex val = factor * block(u, v);
      if (add) {
        m(bi * p + u, bj * p + v) += val;
      } else {
        m(bi * p + u, bj * p + v) = val;
      }
    }
  }
}

}  // namespace

Submatrix extract_square(const OperatorSpec& op, std::size_t n,
                         std::int64_t k) {
  if (n == 0) throw InvalidArgument("section size must be positive");
  op.require_window(k, k + static_cast<std::int64_t>(n) + 1);
  const std::size_t p = op.block_dim();
  CMatrix m(n * p, n * p);
  for (std::size_t i = 0; i < n; ++i) {
    place_block(m, i, i, p, op.beta().at(k + 1 + static_cast<std::int64_t>(i)));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    place_block(m, i + 1, i, p,
                op.alpha().at(k + 1 + static_cast<std::int64_t>(i)));
    place_block(m, i, i + 1, p,
                op.gamma().at(k + 2 + static_cast<std::int64_t>(i)));
  }
  return Submatrix{std::move(m), k, SubmatrixShape::Square, Complex(1.0, 0.0)};
}

Submatrix extract_periodised(const OperatorSpec& op, std::size_t n,
                             std::int64_t k, Complex t) {
  if (std::abs(std::abs(t) - 1.0) > 1e-12) {
    throw InvalidArgument("periodising factor t must have unit modulus");
  }
  Submatrix s = extract_square(op, n, k);
  const std::size_t p = op.block_dim();
  place_block(s.matrix, 0, n - 1, p, op.alpha().at(k), t, /*add=*/true);
  place_block(s.matrix, n - 1, 0, p,
              op.gamma().at(k + static_cast<std::int64_t>(n) + 1), std::conj(t),
              /*add=*/true);
  s.shape = SubmatrixShape::Periodised;
  s.t = t;
  return s;
}

Submatrix extract_rect(const OperatorSpec& op, std::size_t n, std::int64_t k) {
  Submatrix sq = extract_square(op, n, k);
  const std::size_t p = op.block_dim();
  CMatrix m((n + 2) * p, n * p);
  place_block(m, 0, 0, p, op.gamma().at(k + 1));
  for (std::size_t i = 0; i < n * p; ++i) {
    for (std::size_t j = 0; j < n * p; ++j) {
      m(p + i, j) = sq.matrix(i, j);
    }
  }
  place_block(m, n + 1, n - 1, p,
              op.alpha().at(k + static_cast<std::int64_t>(n)));
  return Submatrix{std::move(m), k, SubmatrixShape::Rect, Complex(1.0, 0.0)};
}

CMatrix rect_shift_matrix(const CMatrix& b, std::size_t block_dim,
                          Complex lambda) {
  if (b.rows() != b.cols() + 2 * block_dim) {
    throw InvalidArgument("not an (n+2) x n block section");
  }
  CMatrix m = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    m(block_dim + j, j) -= lambda;
  }
  return m;
}

CMatrix rect_shifted(const OperatorSpec& op, std::size_t n, std::int64_t k,
                     Complex lambda) {
  return rect_shift_matrix(extract_rect(op, n, k).matrix, op.block_dim(),
                           lambda);
}

OperatorSpec adjoint(const OperatorSpec& op) {
  return OperatorSpec(op.gamma().shifted_adjoint(1), op.beta().shifted_adjoint(0),
                      op.alpha().shifted_adjoint(-1), op.gamma_max(),
                      op.beta_max(), op.alpha_max());
}

CMatrix BandSpec::entry(std::int64_t i, std::int64_t j) const {
  const std::int64_t d = i - j;
  const std::int64_t w = static_cast<std::int64_t>(width);
  if (d < -w || d > w) return CMatrix(block_dim(), block_dim());
  return diags[static_cast<std::size_t>(d + w)].at(j);
}

OperatorSpec block_reduce(const BandSpec& banded, std::size_t b) {
  const std::size_t w = banded.width;
  if (w == 0 || banded.diags.size() != 2 * w + 1) {
    throw InvalidArgument("band spec needs 2*width+1 diagonals");
  }
  if (b < w) throw BandWidthExceeded("block size must be >= band width");
  const std::size_t q = banded.block_dim();
  for (const DiagonalGen& g : banded.diags) {
    if (g.block_dim() != q) {
      throw InvalidArgument("band diagonals must share one block dimension");
    }
  }

  // Block index J groups the scalar indices b(J-1)+1 .. bJ, so b = 1 is the
  // identity map. Blocked entry (u,v) of alpha_J / beta_J / gamma_J reads the
  // scalar entry a(b(J-1) + roff + u + 1, b(J-1) + v + 1), roff = b, 0, -b.
  auto assemble = [&](std::int64_t J, std::int64_t roff) {
    CMatrix m(b * q, b * q);
    const std::int64_t base = b * (J - 1);
    for (std::size_t u = 0; u < b; ++u) {
      for (std::size_t v = 0; v < b; ++v) {
        const std::int64_t i = base + roff + static_cast<std::int64_t>(u) + 1;
        const std::int64_t j = base + static_cast<std::int64_t>(v) + 1;
        const CMatrix tile = banded.entry(i, j);
        for (std::size_t x = 0; x < q; ++x) {
          for (std::size_t y = 0; y < q; ++y) {
            m(u * q + x, v * q + y) = tile(x, y);
          }
        }
      }
    }
    return m;
  };

  bool any_sampled = false, any_window = false, any_periodic = false;
  for (const DiagonalGen& g : banded.diags) {
    any_sampled |= g.kind() == GenKind::Sampled;
    any_window |= g.kind() == GenKind::Window;
    any_periodic |= g.kind() == GenKind::Periodic;
  }

  const std::int64_t roffs[3] = {static_cast<std::int64_t>(b), 0,
                                 -static_cast<std::int64_t>(b)};

  if (any_sampled) {
    if (any_window) {
      throw InvalidArgument("mixing sampled and window diagonals is not supported");
    }
    std::int64_t jlo = std::numeric_limits<std::int64_t>::min();
    std::int64_t jhi = std::numeric_limits<std::int64_t>::max();
    for (const DiagonalGen& g : banded.diags) {
      if (g.kind() != GenKind::Sampled) continue;
      const std::int64_t s = g.start();
      const std::int64_t e = s + static_cast<std::int64_t>(g.values().size()) - 1;
      // block J reads columns b(J-1)+1 .. bJ
      jlo = std::max(jlo, 1 + floordiv(s - 1 + static_cast<std::int64_t>(b) - 1,
                                       static_cast<std::int64_t>(b)));
      jhi = std::min(jhi, floordiv(e, static_cast<std::int64_t>(b)));
    }
    if (jlo > jhi) throw InvalidArgument("sampled ranges too small for blocking");
    std::vector<CMatrix> gens[3];
    for (std::int64_t J = jlo; J <= jhi; ++J) {
      for (int g = 0; g < 3; ++g) gens[g].push_back(assemble(J, roffs[g]));
    }
    return OperatorSpec(DiagonalGen::sampled(std::move(gens[0]), jlo),
                        DiagonalGen::sampled(std::move(gens[1]), jlo),
                        DiagonalGen::sampled(std::move(gens[2]), jlo));
  }

  if (any_window) {
    if (any_periodic) {
      throw InvalidArgument("mixing periodic and window diagonals is not supported");
    }
    std::set<std::int64_t> touched;
    for (const DiagonalGen& g : banded.diags) {
      if (g.kind() != GenKind::Window) continue;
      for (const auto& [j, v] : g.entries()) {
        touched.insert(1 + floordiv(j - 1, static_cast<std::int64_t>(b)));
      }
    }
    // The far-field block value: all scalar reads hit window defaults, so any
    // untouched J gives the same result.
    std::int64_t far = touched.empty() ? 0 : (*touched.rbegin() + 2);
    std::vector<DiagonalGen> out;
    for (int g = 0; g < 3; ++g) {
      std::map<std::int64_t, CMatrix> ents;
      for (std::int64_t J : touched) ents.emplace(J, assemble(J, roffs[g]));
      out.push_back(DiagonalGen::window(std::move(ents), assemble(far, roffs[g])));
    }
    return OperatorSpec(out[0], out[1], out[2]);
  }

  // Constant / periodic diagonals: the blocked diagonals are periodic with
  // period P / gcd(b, P), P the lcm of the scalar periods.
  std::int64_t P = 1;
  for (const DiagonalGen& g : banded.diags) {
    if (g.kind() == GenKind::Periodic) {
      P = std::lcm(P, static_cast<std::int64_t>(g.period()));
    }
  }
  const std::int64_t L = P / std::gcd(P, static_cast<std::int64_t>(b));
  std::vector<CMatrix> gens[3];
  for (std::int64_t J = 0; J < L; ++J) {
    for (int g = 0; g < 3; ++g) gens[g].push_back(assemble(J, roffs[g]));
  }
  if (L == 1) {
    return OperatorSpec(DiagonalGen::constant(gens[0][0]),
                        DiagonalGen::constant(gens[1][0]),
                        DiagonalGen::constant(gens[2][0]));
  }
  return OperatorSpec(DiagonalGen::periodic(std::move(gens[0])),
                      DiagonalGen::periodic(std::move(gens[1])),
                      DiagonalGen::periodic(std::move(gens[2])));
}

}  // namespace specbox
