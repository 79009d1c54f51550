#include "fhk/harmonics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "fhk/special_poly.hpp"
#include "json.hpp"

namespace fhk {
namespace {

constexpr double kNullspaceThreshold = 1e-10;
constexpr double kCoefficientFloor = 1e-14;
constexpr double kHarmonicTolerance = 1e-10;
constexpr double kPivotTolerance = 1e-12;
constexpr std::size_t kGramChunk = 4096;

int degree_of(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

// Exponent vectors of total degree `total` in q variables, leading exponent
// descending.
void compositions(int total, int q, MultiIndex& cur, std::vector<MultiIndex>& out) {
  const std::size_t pos = cur.size();
  if (static_cast<int>(pos) == q - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur.push_back(k);
    compositions(total - k, q, cur, out);
    cur.pop_back();
  }
}

std::vector<MultiIndex> exponents(int total, int q) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  cur.reserve(q);
  compositions(total, q, cur, out);
  return out;
}

cplx phase_normalizer(const std::vector<cplx>& coeffs) {
  double best = 0.0;
  for (const cplx& c : coeffs) best = std::max(best, std::abs(c));
  if (best == 0.0) return {1.0, 0.0};
  for (const cplx& c : coeffs) {
    if (std::abs(c) >= best * (1.0 - 1e-9)) return std::conj(c) / std::abs(c);
  }
  return {1.0, 0.0};
}

void check_point(int q, std::span<const cplx> z) {
  if (static_cast<int>(z.size()) != q) throw ParameterError("polynomial evaluated at a point of the wrong dimension");
}

}  // namespace

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree_of(a.alpha) + degree_of(a.beta);
  const int db = degree_of(b.alpha) + degree_of(b.beta);
  if (da != db) return da < db;
  if (a.alpha != b.alpha) return a.alpha > b.alpha;
  return a.beta > b.beta;
}

PolyZZbar::PolyZZbar(int q) : q_(q) {
  if (q < 1) throw ParameterError("PolyZZbar: q must be >= 1");
}

void PolyZZbar::add_term(const MultiIndex& alpha, const MultiIndex& beta, cplx c) {
  if (static_cast<int>(alpha.size()) != q_ || static_cast<int>(beta.size()) != q_)
    throw ParameterError("PolyZZbar: multi-index length must equal q");
  for (int e : alpha)
    if (e < 0) throw ParameterError("PolyZZbar: negative exponent");
  for (int e : beta)
    if (e < 0) throw ParameterError("PolyZZbar: negative exponent");
  if (c == cplx{0.0, 0.0}) return;
  Monomial key{alpha, beta};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
}

cplx PolyZZbar::coefficient(const MultiIndex& alpha, const MultiIndex& beta) const {
  auto it = terms_.find(Monomial{alpha, beta});
  return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

std::optional<std::pair<int, int>> PolyZZbar::bidegree() const {
  if (terms_.empty()) return std::nullopt;
  const auto& first = terms_.begin()->first;
  const std::pair<int, int> bd{degree_of(first.alpha), degree_of(first.beta)};
  for (const auto& [mono, c] : terms_) {
    if (degree_of(mono.alpha) != bd.first || degree_of(mono.beta) != bd.second) return std::nullopt;
  }
  return bd;
}

int PolyZZbar::total_degree() const {
  int d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, degree_of(mono.alpha) + degree_of(mono.beta));
  return d;
}

double PolyZZbar::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

PolyZZbar PolyZZbar::conjugate() const {
  PolyZZbar out(q_);
  for (const auto& [mono, c] : terms_) out.add_term(mono.beta, mono.alpha, std::conj(c));
  return out;
}

PolyZZbar& PolyZZbar::operator+=(const PolyZZbar& other) {
  if (other.q_ != q_) throw ParameterError("PolyZZbar: adding polynomials of different q");
  for (const auto& [mono, c] : other.terms_) add_term(mono.alpha, mono.beta, c);
  return *this;
}

PolyZZbar& PolyZZbar::operator*=(cplx s) {
  if (s == cplx{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= s;
  return *this;
}

PolyEvaluator::PolyEvaluator(const PolyZZbar& p) : q_(p.q()), max_exp_(0) {
  exps_.reserve(p.terms().size() * 2 * q_);
  coeffs_.reserve(p.terms().size());
  for (const auto& [mono, c] : p.terms()) {
    for (int e : mono.alpha) {
      exps_.push_back(e);
      max_exp_ = std::max(max_exp_, e);
    }
    for (int e : mono.beta) {
      exps_.push_back(e);
      max_exp_ = std::max(max_exp_, e);
    }
    coeffs_.push_back(c);
  }
}

cplx PolyEvaluator::operator()(std::span<const cplx> z) const {
  check_point(q_, z);
  const std::size_t stride = static_cast<std::size_t>(max_exp_ + 1);
  const std::size_t need = 2 * static_cast<std::size_t>(q_) * stride;
  std::array<cplx, 512> local;
  std::vector<cplx> heap;
  cplx* pw = local.data();
  if (need > local.size()) {
    heap.resize(need);
    pw = heap.data();
  }
  // pw[(2j) * stride + k] = z_j^k, pw[(2j+1) * stride + k] = conj(z_j)^k
  for (int j = 0; j < q_; ++j) {
    cplx* zp = pw + (2 * j) * stride;
    cplx* zb = pw + (2 * j + 1) * stride;
    zp[0] = zb[0] = 1.0;
    const cplx zj = z[j], zjb = std::conj(z[j]);
    for (int k = 1; k <= max_exp_; ++k) {
      zp[k] = zp[k - 1] * zj;
      zb[k] = zb[k - 1] * zjb;
    }
  }
  cplx sum{0.0, 0.0};
  const std::size_t width = 2 * static_cast<std::size_t>(q_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const int* e = exps_.data() + t * width;
    cplx term = coeffs_[t];
    for (int j = 0; j < q_; ++j) {
      if (e[j]) term *= pw[(2 * j) * stride + e[j]];
      if (e[q_ + j]) term *= pw[(2 * j + 1) * stride + e[q_ + j]];
    }
    sum += term;
  }
  return sum;
}

cplx poly_eval(const PolyZZbar& p, std::span<const cplx> z) {
  check_point(p.q(), z);
  if (p.empty()) return {0.0, 0.0};
  return PolyEvaluator(p)(z);
}

PolyZZbar laplacian(const PolyZZbar& p) {
  PolyZZbar out(p.q());
  for (const auto& [mono, c] : p.terms()) {
    for (int j = 0; j < p.q(); ++j) {
      const int a = mono.alpha[j], b = mono.beta[j];
      if (a == 0 || b == 0) continue;
      MultiIndex alpha = mono.alpha, beta = mono.beta;
      --alpha[j];
      --beta[j];
      out.add_term(alpha, beta, 4.0 * a * b * c);
    }
  }
  return out;
}

double laplacian_residual(const PolyZZbar& p) {
  return laplacian(p).max_abs_coefficient() / std::max(1.0, p.max_abs_coefficient());
}

std::vector<Monomial> monomial_basis(int m, int n, int q) {
  if (m < 0 || n < 0 || q < 1) throw ParameterError("monomial_basis: invalid (m, n, q)");
  std::vector<Monomial> out;
  const auto as = exponents(m, q);
  const auto bs = exponents(n, q);
  out.reserve(as.size() * bs.size());
  for (const auto& a : as)
    for (const auto& b : bs) out.push_back({a, b});
  return out;
}

namespace {

// Laplacian matrix P_{m,n} -> P_{m-1,n-1} in the monomial bases (integer entries).
Eigen::MatrixXd laplacian_matrix(int m, int n, int q, const std::vector<Monomial>& cols) {
  const auto rows = monomial_basis(m - 1, n - 1, q);
  std::map<Monomial, Eigen::Index, GradedLex> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], static_cast<Eigen::Index>(i));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int j = 0; j < q; ++j) {
      const int ea = cols[c].alpha[j], eb = cols[c].beta[j];
      if (ea == 0 || eb == 0) continue;
      Monomial target = cols[c];
      --target.alpha[j];
      --target.beta[j];
      a(row_index.at(target), static_cast<Eigen::Index>(c)) += 4.0 * ea * eb;
    }
  }
  return a;
}

struct Nullspace {
  std::size_t rank = 0;
  Eigen::MatrixXd basis;  // columns
};

Nullspace laplacian_nullspace(const DiskIndex& idx, const std::vector<Monomial>& cols) {
  const Eigen::Index ncols = static_cast<Eigen::Index>(cols.size());
  if (idx.m() == 0 || idx.n() == 0) return {0, Eigen::MatrixXd::Identity(ncols, ncols)};
  const Eigen::MatrixXd a = laplacian_matrix(idx.m(), idx.n(), idx.q(), cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kNullspaceThreshold * smax) ++rank;
  const Eigen::Index r = static_cast<Eigen::Index>(rank);
  return {rank, svd.matrixV().rightCols(ncols - r)};
}

}  // namespace

std::size_t laplacian_nullspace_dim(const DiskIndex& idx) {
  const auto cols = monomial_basis(idx.m(), idx.n(), idx.q());
  if (idx.m() == 0 || idx.n() == 0) return cols.size();
  const Eigen::MatrixXd a = laplacian_matrix(idx.m(), idx.n(), idx.q(), cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kNullspaceThreshold * smax) ++rank;
  return cols.size() - rank;
}

HarmonicBasis solid_harmonic_basis(const DiskIndex& idx) {
  const auto cols = monomial_basis(idx.m(), idx.n(), idx.q());
  const Nullspace ns = laplacian_nullspace(idx, cols);
  const std::uint64_t expected = harmonic_dim(idx);
  if (static_cast<std::uint64_t>(ns.basis.cols()) != expected)
    throw ConsistencyError("solid_harmonic_basis: nullspace dimension " +
                           std::to_string(ns.basis.cols()) + " != d(m,n) = " + std::to_string(expected));

  HarmonicBasis out{idx, {}, 0.0};
  out.elements.reserve(static_cast<std::size_t>(ns.basis.cols()));
  for (Eigen::Index k = 0; k < ns.basis.cols(); ++k) {
    std::vector<cplx> coeffs(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const double v = ns.basis(static_cast<Eigen::Index>(i), k);
      coeffs[i] = std::abs(v) < kCoefficientFloor ? 0.0 : v;
    }
    const cplx phase = phase_normalizer(coeffs);
    PolyZZbar p(idx.q());
    for (std::size_t i = 0; i < cols.size(); ++i) p.add_term(cols[i].alpha, cols[i].beta, phase * coeffs[i]);
    if (laplacian_residual(p) > kHarmonicTolerance)
      throw ConsistencyError("solid_harmonic_basis: element is not annihilated by the Laplacian");
    out.elements.push_back(std::move(p));
  }
  return out;
}

namespace {

struct CoefficientMatrix {
  std::vector<Monomial> monos;
  Eigen::MatrixXcd coeff;
};

CoefficientMatrix coefficient_matrix(const HarmonicBasis& basis, const char* who) {
  const DiskIndex& idx = basis.idx;
  CoefficientMatrix out{monomial_basis(idx.m(), idx.n(), idx.q()), {}};
  std::map<Monomial, Eigen::Index, GradedLex> col_of;
  for (std::size_t i = 0; i < out.monos.size(); ++i) col_of.emplace(out.monos[i], static_cast<Eigen::Index>(i));
  const Eigen::Index nm = static_cast<Eigen::Index>(out.monos.size());
  const Eigen::Index d = static_cast<Eigen::Index>(basis.elements.size());
  out.coeff = Eigen::MatrixXcd::Zero(nm, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const PolyZZbar& p = basis.elements[static_cast<std::size_t>(k)];
    if (p.q() != idx.q()) throw ParameterError(std::string(who) + ": element of wrong q");
    for (const auto& [mono, c] : p.terms()) {
      auto it = col_of.find(mono);
      if (it == col_of.end()) throw ParameterError(std::string(who) + ": element outside P_{m,n}");
      out.coeff(it->second, k) = c;
    }
  }
  return out;
}

// Modified Gram-Schmidt with one reorthogonalization pass in the inner
// product <a, b> = b^H G a. G t_j is kept alongside each finished column.
HarmonicBasis orthonormalize_with_gram(const DiskIndex& idx, const CoefficientMatrix& cm,
                                       const Eigen::MatrixXcd& gram, const char* who) {
  const Eigen::Index nm = cm.coeff.rows();
  const Eigen::Index d = cm.coeff.cols();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd gt = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXcd v = t.col(i);
    Eigen::VectorXcd gv = gram.col(i);
    const double start_norm = std::sqrt(std::max(0.0, v.dot(gv).real()));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < i; ++j) {
        const cplx c = t.col(j).dot(gv);
        v -= c * t.col(j);
        gv -= c * gt.col(j);
      }
    }
    const double nrm = std::sqrt(std::max(0.0, v.dot(gv).real()));
    if (!(nrm > kPivotTolerance * std::max(start_norm, 1e-300)))
      throw DegeneracyError(std::string(who) + ": numerically dependent input");
    t.col(i) = v / nrm;
    gt.col(i) = gv / nrm;
  }

  const Eigen::MatrixXcd check = t.adjoint() * gram * t - Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd new_coeff = cm.coeff * t;

  HarmonicBasis out{idx, {}, check.cwiseAbs().maxCoeff()};
  out.elements.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    std::vector<cplx> cs(static_cast<std::size_t>(nm));
    for (Eigen::Index i = 0; i < nm; ++i) cs[static_cast<std::size_t>(i)] = new_coeff(i, k);
    const cplx phase = phase_normalizer(cs);
    PolyZZbar p(idx.q());
    for (Eigen::Index i = 0; i < nm; ++i) {
      const cplx c = phase * cs[static_cast<std::size_t>(i)];
      if (std::abs(c) < kCoefficientFloor) continue;
      p.add_term(cm.monos[static_cast<std::size_t>(i)].alpha, cm.monos[static_cast<std::size_t>(i)].beta, c);
    }
    out.elements.push_back(std::move(p));
  }
  return out;
}

// int_{Omega_{2q}} |z^g|^2 dsigma = 2 pi^q g! / (q - 1 + |g|)!
double sphere_moment(const MultiIndex& g, int q) {
  double lg = 0.0;
  int total = 0;
  for (int e : g) {
    lg += log_factorial(e);
    total += e;
  }
  return 2.0 * std::pow(pi, q) * std::exp(lg - log_factorial(q - 1 + total));
}

}  // namespace

HarmonicBasis orthonormalize_on_sphere(const HarmonicBasis& basis, const QuadratureRule& rule) {
  const DiskIndex& idx = basis.idx;
  if (rule.domain() != Domain::sphere || rule.q() != idx.q())
    throw ParameterError("orthonormalize_on_sphere: need a sphere rule for the same q");
  if (rule.exact_degree() < 2 * (idx.m() + idx.n()))
    throw ParameterError("orthonormalize_on_sphere: rule not exact to degree 2(m+n)");

  const CoefficientMatrix cm = coefficient_matrix(basis, "orthonormalize_on_sphere");
  const auto& monos = cm.monos;
  const Eigen::Index nm = cm.coeff.rows();
  const Eigen::Index d = cm.coeff.cols();

  // H_{ij} = <Y_j, Y_i> accumulated in fixed node chunks.
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
  const std::size_t n_nodes = rule.size();
  for (std::size_t start = 0; start < n_nodes; start += kGramChunk) {
    const std::size_t stop = std::min(n_nodes, start + kGramChunk);
    const Eigen::Index rows = static_cast<Eigen::Index>(stop - start);
    Eigen::MatrixXcd vals(rows, nm);
    for (std::size_t i = start; i < stop; ++i) {
      const auto z = rule.node(i);
      for (Eigen::Index c = 0; c < nm; ++c) {
        const Monomial& mono = monos[static_cast<std::size_t>(c)];
        cplx v{1.0, 0.0};
        for (int j = 0; j < idx.q(); ++j) {
          for (int e = 0; e < mono.alpha[j]; ++e) v *= z[j];
          for (int e = 0; e < mono.beta[j]; ++e) v *= std::conj(z[j]);
        }
        vals(static_cast<Eigen::Index>(i - start), c) = v;
      }
    }
    const Eigen::MatrixXcd e = vals * cm.coeff;
    Eigen::VectorXd w(rows);
    for (Eigen::Index r = 0; r < rows; ++r) w(r) = rule.weights()[start + static_cast<std::size_t>(r)];
    gram.noalias() += e.adjoint() * w.asDiagonal() * e;
  }
  return orthonormalize_with_gram(idx, cm, gram, "orthonormalize_on_sphere");
}

HarmonicBasis orthonormalize_by_moments(const HarmonicBasis& basis) {
  const DiskIndex& idx = basis.idx;
  const CoefficientMatrix cm = coefficient_matrix(basis, "orthonormalize_by_moments");
  const auto& monos = cm.monos;
  const Eigen::Index nm = cm.coeff.rows();
  const int q = idx.q();

  // z^a conj(z)^b conj(z^c conj(z)^e) integrates to zero unless a + e = b + c.
  Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(nm, nm);
  MultiIndex lhs(static_cast<std::size_t>(q)), rhs(static_cast<std::size_t>(q));
  for (Eigen::Index r = 0; r < nm; ++r) {
    const Monomial& a = monos[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < nm; ++c) {
      const Monomial& b = monos[static_cast<std::size_t>(c)];
      bool match = true;
      for (int j = 0; j < q && match; ++j) {
        lhs[j] = a.alpha[j] + b.beta[j];
        rhs[j] = b.alpha[j] + a.beta[j];
        match = lhs[j] == rhs[j];
      }
      if (match) moments(r, c) = sphere_moment(lhs, q);
    }
  }
  const Eigen::MatrixXcd gram = cm.coeff.adjoint() * moments.cast<cplx>() * cm.coeff;
  return orthonormalize_with_gram(idx, cm, gram, "orthonormalize_by_moments");
}

HarmonicBasis orthonormal_harmonic_basis(const DiskIndex& idx) {
  return orthonormalize_by_moments(solid_harmonic_basis(idx));
}

double addition_formula_residual(const DiskIndex& idx, const HarmonicBasis& onb,
                                 std::span<const cplx> z, std::span<const cplx> w) {
  if (!(onb.idx == idx)) throw ParameterError("addition_formula_residual: basis index mismatch");
  cplx sum{0.0, 0.0};
  for (const auto& y : onb.elements) sum += poly_eval(y, z) * std::conj(poly_eval(y, w));
  const double scale = sphere_area(idx.q()) / static_cast<double>(harmonic_dim(idx));
  return std::abs(disk_poly(idx, inner(z, w)) - scale * sum);
}

std::string basis_to_json(const HarmonicBasis& basis) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["m"] = basis.idx.m();
  j["n"] = basis.idx.n();
  j["q"] = basis.idx.q();
  j["gram_residual"] = basis.gram_residual;
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& p : basis.elements) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, c] : p.terms())
      terms.push_back({{"alpha", mono.alpha}, {"beta", mono.beta}, {"re", c.real()}, {"im", c.imag()}});
    elements.push_back({{"terms", std::move(terms)}});
  }
  j["elements"] = std::move(elements);
  return j.dump();
}

HarmonicBasis basis_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const DiskIndex idx(j.at("m").get<int>(), j.at("n").get<int>(), j.at("q").get<int>());
    HarmonicBasis out{idx, {}, j.value("gram_residual", 0.0)};
    for (const auto& e : j.at("elements")) {
      PolyZZbar p(idx.q());
      for (const auto& t : e.at("terms"))
        p.add_term(t.at("alpha").get<MultiIndex>(), t.at("beta").get<MultiIndex>(),
                   {t.at("re").get<double>(), t.at("im").get<double>()});
      out.elements.push_back(std::move(p));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("basis_from_json: ") + e.what());
  }
}

}  // namespace fhk
