#include "fhk/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "fhk/special_poly.hpp"
#include "json.hpp"

namespace fhk {
namespace {

constexpr double kMinWeight = 1e-300;
constexpr std::size_t kBlock = 2048;
constexpr int kSchemaVersion = 1;

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

cplx pairwise(std::span<const cplx> v) {
  if (v.empty()) return {};
  if (v.size() == 1) return v[0];
  const std::size_t mid = v.size() / 2;
  return pairwise(v.first(mid)) + pairwise(v.subspan(mid));
}

// Radial sizes: a sphere rule of degree D needs Gauss in u = t^2 exact to
// degree floor(D/2).
int sphere_radial_count(int degree) { return (degree / 2 + 2) / 2; }

// Gauss-Jacobi in u = t^2 on [0,1] for t (1-t^2)^{q-2} dt.
GaussRule sphere_radial(int q, int n) {
  GaussRule g = gauss_jacobi(n, q - 2.0, 0.0);
  const double scale = std::ldexp(1.0, -q);
  for (auto& w : g.weights) w *= scale;
  return g;
}

// Gauss-Jacobi in r on [0,1] for r^{2q-1} dr.
GaussRule ball_radial(int q, int n) {
  GaussRule g = gauss_jacobi(n, 0.0, 2.0 * q - 1.0);
  const double scale = std::ldexp(1.0, -2 * q);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    g.nodes[i] = 0.5 * (1.0 + g.nodes[i]);
    g.weights[i] *= scale;
  }
  return g;
}

QuadratureRule sphere_rule_impl(int q, int n_angle, int n_radial, int exact_degree) {
  QuadratureRule base = circle_rule(n_angle);
  std::vector<cplx> nodes(base.flat_nodes().begin(), base.flat_nodes().end());
  std::vector<double> weights(base.weights().begin(), base.weights().end());
  const QuadratureRule circle = circle_rule(n_angle);

  for (int level = 2; level <= q; ++level) {
    const GaussRule radial = sphere_radial(level, n_radial);
    const std::size_t prev_dim = static_cast<std::size_t>(level - 1);
    const std::size_t prev_count = weights.size();
    std::vector<cplx> next_nodes;
    std::vector<double> next_weights;
    next_nodes.reserve(prev_count * radial.nodes.size() * circle.size() * (prev_dim + 1));
    next_weights.reserve(prev_count * radial.nodes.size() * circle.size());
    for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
      const double x = radial.nodes[ir];
      const double t = std::sqrt(0.5 * (1.0 + x));
      const double s = std::sqrt(0.5 * (1.0 - x));
      for (std::size_t ia = 0; ia < circle.size(); ++ia) {
        const cplx last = t * circle.node(ia)[0];
        const double wra = radial.weights[ir] * circle.weights()[ia];
        for (std::size_t k = 0; k < prev_count; ++k) {
          const double w = wra * weights[k];
          if (w < kMinWeight) continue;
          for (std::size_t j = 0; j < prev_dim; ++j) next_nodes.push_back(s * nodes[k * prev_dim + j]);
          next_nodes.push_back(last);
          next_weights.push_back(w);
        }
      }
    }
    nodes = std::move(next_nodes);
    weights = std::move(next_weights);
  }
  return QuadratureRule(Domain::sphere, q, q, exact_degree, sphere_area(q), std::move(nodes),
                        std::move(weights));
}

}  // namespace

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::circle: return "circle";
    case Domain::disk_nu: return "disk_nu";
    case Domain::sphere: return "sphere";
    case Domain::ball: return "ball";
    case Domain::cylinder: return "cylinder";
    case Domain::subsphere: return "subsphere";
  }
  return "unknown";
}

Domain domain_from_string(std::string_view s) {
  for (Domain d : {Domain::circle, Domain::disk_nu, Domain::sphere, Domain::ball,
                   Domain::cylinder, Domain::subsphere}) {
    if (to_string(d) == s) return d;
  }
  throw ParameterError("unknown quadrature domain '" + std::string(s) + "'");
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw ParameterError("gauss_jacobi: n must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw ParameterError("gauss_jacobi: alpha, beta > -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  if (n == 1) {
    g.nodes[0] = diag(0);
    g.weights[0] = mu0;
    return g;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error("gauss_jacobi: eigen solver failed");
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    g.weights[i] = mu0 * v * v;
  }
  return g;
}

GaussRule gauss_legendre_unit(int n) {
  GaussRule g = gauss_jacobi(n, 0.0, 0.0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    g.nodes[i] = 0.5 * (1.0 + g.nodes[i]);
    g.weights[i] *= 0.5;
  }
  return g;
}

QuadratureRule::QuadratureRule(Domain domain, int q, int dim, int exact_degree, double measure_mass,
                               std::vector<cplx> nodes, std::vector<double> weights)
    : domain_(domain),
      q_(q),
      dim_(dim),
      exact_degree_(exact_degree),
      measure_mass_(measure_mass),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)) {
  if (dim_ < 1) throw ParameterError("QuadratureRule: dim must be >= 1");
  if (nodes_.size() != weights_.size() * static_cast<std::size_t>(dim_))
    throw ParameterError("QuadratureRule: node/weight count mismatch");
  for (double w : weights_) {
    if (!(w > 0.0)) throw ParameterError("QuadratureRule: weights must be positive");
  }
}

double QuadratureRule::weight_sum() const {
  CompensatedSum s;
  for (double w : weights_) s.add(w);
  return s.value();
}

QuadratureRule circle_rule(int n) {
  if (n < 1) throw ParameterError("circle_rule: N must be >= 1");
  std::vector<cplx> nodes(n);
  std::vector<double> weights(n, 2.0 * pi / n);
  for (int k = 0; k < n; ++k) nodes[k] = std::polar(1.0, 2.0 * pi * k / n);
  return QuadratureRule(Domain::circle, 1, 1, n - 1, 2.0 * pi, std::move(nodes), std::move(weights));
}

QuadratureRule disk_rule_nu(int q, int n_radial, int n_angle) {
  if (q < 2) throw ParameterError("disk_rule_nu: q must be >= 2");
  if (n_radial < 1 || n_angle < 1) throw ParameterError("disk_rule_nu: sizes must be >= 1");
  const GaussRule radial = gauss_jacobi(n_radial, q - 2.0, 0.0);
  const QuadratureRule circle = circle_rule(n_angle);
  // (q-1)/(2pi) (1-u)^{q-2} du dtheta with u = (1+x)/2.
  const double scale = (q - 1.0) / (2.0 * pi) * std::ldexp(1.0, -(q - 1));
  std::vector<cplx> nodes;
  std::vector<double> weights;
  for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
    const double r = std::sqrt(0.5 * (1.0 + radial.nodes[ir]));
    for (std::size_t ia = 0; ia < circle.size(); ++ia) {
      const double w = scale * radial.weights[ir] * circle.weights()[ia];
      if (w < kMinWeight) continue;
      nodes.push_back(r * circle.node(ia)[0]);
      weights.push_back(w);
    }
  }
  const int exact = std::min(n_angle - 1, 4 * n_radial - 1);
  return QuadratureRule(Domain::disk_nu, q, 1, exact, 1.0, std::move(nodes), std::move(weights));
}

QuadratureRule sphere_rule(int q, int degree) {
  if (q < 1) throw ParameterError("sphere_rule: q must be >= 1");
  if (degree < 0) throw ParameterError("sphere_rule: degree must be >= 0");
  return sphere_rule_impl(q, degree + 1, sphere_radial_count(degree), degree);
}

QuadratureRule ball_rule_sized(int q, int n_radial, int sphere_degree) {
  if (q < 1) throw ParameterError("ball_rule: q must be >= 1");
  if (n_radial < 1) throw ParameterError("ball_rule: n_radial must be >= 1");
  const QuadratureRule sphere = sphere_rule(q, sphere_degree);
  const GaussRule radial = ball_radial(q, n_radial);
  const std::size_t dim = static_cast<std::size_t>(q);
  std::vector<cplx> nodes;
  std::vector<double> weights;
  nodes.reserve(radial.nodes.size() * sphere.size() * dim);
  weights.reserve(radial.nodes.size() * sphere.size());
  for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
    const double r = radial.nodes[ir];
    for (std::size_t k = 0; k < sphere.size(); ++k) {
      const double w = radial.weights[ir] * sphere.weights()[k];
      if (w < kMinWeight) continue;
      for (const cplx& c : sphere.node(k)) nodes.push_back(r * c);
      weights.push_back(w);
    }
  }
  const int exact = std::min(sphere_degree, 2 * n_radial - 1);
  return QuadratureRule(Domain::ball, q, q, exact, ball_volume(q), std::move(nodes),
                        std::move(weights));
}

QuadratureRule ball_rule(int q, int degree) {
  if (degree < 0) throw ParameterError("ball_rule: degree must be >= 0");
  return ball_rule_sized(q, degree / 2 + 1, degree);
}

QuadratureRule cylinder_rule_sized(int q, int n_angle, int n_radial, int sphere_degree) {
  if (q < 2) throw ParameterError("cylinder_rule: q must be >= 2");
  const QuadratureRule ball = ball_rule_sized(q - 1, n_radial, sphere_degree);
  const QuadratureRule circle = circle_rule(n_angle);
  const std::size_t bdim = static_cast<std::size_t>(q - 1);
  std::vector<cplx> nodes;
  std::vector<double> weights;
  nodes.reserve(circle.size() * ball.size() * (bdim + 1));
  weights.reserve(circle.size() * ball.size());
  for (std::size_t ia = 0; ia < circle.size(); ++ia) {
    for (std::size_t k = 0; k < ball.size(); ++k) {
      const double w = circle.weights()[ia] * ball.weights()[k];
      if (w < kMinWeight) continue;
      for (const cplx& c : ball.node(k)) nodes.push_back(c);
      nodes.push_back(circle.node(ia)[0]);
      weights.push_back(w);
    }
  }
  const int exact = std::min(ball.exact_degree(), n_angle - 1);
  return QuadratureRule(Domain::cylinder, q, q, exact, 2.0 * pi * ball_volume(q - 1),
                        std::move(nodes), std::move(weights));
}

QuadratureRule cylinder_rule(int q, int degree) {
  if (degree < 0) throw ParameterError("cylinder_rule: degree must be >= 0");
  return cylinder_rule_sized(q, degree + 1, degree / 2 + 1, degree);
}

cplx cylinder_disk_argument(std::span<const cplx> node) {
  const double eta = std::sqrt(norm_sq(node.first(node.size() - 1)));
  const double h = eta >= 1.0 ? 0.0 : std::sqrt((1.0 - eta) * (1.0 + eta));
  return h * node.back();
}

void cylinder_point(std::span<const cplx> node, std::span<cplx> out) {
  const std::size_t last = node.size() - 1;
  for (std::size_t j = 0; j < last; ++j) out[j] = node[j];
  out[last] = cylinder_disk_argument(node);
}

UnitaryFrame::UnitaryFrame(std::vector<cplx> matrix, ComplexPoint pole)
    : matrix_(std::move(matrix)), pole_(std::move(pole)) {
  if (matrix_.size() != pole_.dim() * pole_.dim())
    throw ParameterError("UnitaryFrame: matrix size does not match pole dimension");
}

void UnitaryFrame::apply(std::span<const cplx> x, std::span<cplx> out) const {
  const std::size_t q = pole_.dim();
  for (std::size_t i = 0; i < q; ++i) {
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < q; ++j) s += matrix_[i * q + j] * x[j];
    out[i] = s;
  }
}

ComplexPoint UnitaryFrame::apply(std::span<const cplx> x) const {
  ComplexPoint out(pole_.dim());
  apply(x, out.data());
  return out;
}

double UnitaryFrame::unitarity_residual() const {
  const std::size_t q = pole_.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < q; ++k) s += std::conj(matrix_[k * q + i]) * matrix_[k * q + j];
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

UnitaryFrame UnitaryFrame::with_gauge(std::span<const cplx> v) const {
  const std::size_t q = pole_.dim();
  const std::size_t p = q - 1;
  if (v.size() != p * p) throw ParameterError("with_gauge: V must be (q-1)x(q-1)");
  std::vector<cplx> out(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      cplx s{0.0, 0.0};
      if (j == p) {
        s = matrix_[i * q + p];
      } else {
        for (std::size_t k = 0; k < p; ++k) s += matrix_[i * q + k] * v[k * p + j];
      }
      out[i * q + j] = s;
    }
  }
  return UnitaryFrame(std::move(out), pole_);
}

UnitaryFrame frame_from_pole(const ComplexPoint& w) {
  const std::size_t q = w.dim();
  if (q < 1) throw ParameterError("frame_from_pole: empty pole");
  const double nrm = std::sqrt(norm_sq(w));
  if (!(std::abs(nrm - 1.0) <= 1e-10)) throw DomainError("frame_from_pole: ||w|| must be 1");

  // U = e^{i phi} (I - v v^H / (1 - y_q)) with y = e^{-i phi} w, v = e_q - y,
  // so that U e_q = w.
  const std::size_t last = q - 1;
  const cplx wq = w[last];
  const cplx phase = std::abs(wq) > 0.0 ? wq / std::abs(wq) : cplx{1.0, 0.0};
  std::vector<cplx> y(q);
  for (std::size_t j = 0; j < q; ++j) y[j] = std::conj(phase) * w[j];
  y[last] = std::abs(wq);

  std::vector<cplx> v(q);
  for (std::size_t j = 0; j < q; ++j) v[j] = -y[j];
  v[last] += 1.0;
  const double vv = norm_sq(v);

  std::vector<cplx> m(q * q, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < q; ++i) m[i * q + i] = 1.0;
  if (vv > 1e-300) {
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) m[i * q + j] -= 2.0 * v[i] * std::conj(v[j]) / vv;
  }
  for (auto& c : m) c *= phase;
  // The last column is exactly w up to rounding; store it verbatim.
  for (std::size_t i = 0; i < q; ++i) m[i * q + last] = w[i];
  return UnitaryFrame(std::move(m), w);
}

int thread_count_from_env() {
  const char* env = std::getenv("FHK_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

namespace {

struct BlockResult {
  cplx value{};
  bool failed = false;
  std::size_t bad_node = 0;
};

template <typename ValueAt>
cplx reduce_blocks(std::size_t count, std::span<const double> weights, int threads,
                   const ValueAt& value_at) {
  const std::size_t nblocks = (count + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(nblocks);
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run_block = [&](std::size_t b) {
    CompensatedSum re, im;
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(count, begin + kBlock);
    for (std::size_t i = begin; i < end; ++i) {
      const cplx v = value_at(i);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        blocks[b].failed = true;
        blocks[b].bad_node = i;
        return;
      }
      re.add(weights[i] * v.real());
      im.add(weights[i] * v.imag());
    }
    blocks[b].value = {re.value(), im.value()};
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(nblocks)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t b = static_cast<std::size_t>(t); b < nblocks; b += workers) run_block(b);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    pool.clear();
  }
  if (error) std::rethrow_exception(error);

  std::vector<cplx> partial(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    if (blocks[b].failed) throw EvaluationError(blocks[b].bad_node, "non-finite integrand value");
    partial[b] = blocks[b].value;
  }
  return pairwise(partial);
}

}  // namespace

cplx integrate(const Integrand& f, const QuadratureRule& rule, int threads) {
  if (threads <= 0) threads = thread_count_from_env();
  return reduce_blocks(rule.size(), rule.weights(), threads,
                       [&](std::size_t i) { return f(rule.node(i)); });
}

cplx integrate_values(std::span<const cplx> values, const QuadratureRule& rule) {
  if (values.size() != rule.size()) throw ParameterError("integrate_values: size mismatch");
  return reduce_blocks(rule.size(), rule.weights(), 1, [&](std::size_t i) { return values[i]; });
}

cplx cylinder_route_integral(const Integrand& f, const UnitaryFrame& frame,
                             const QuadratureRule& cylinder, int threads) {
  if (cylinder.domain() != Domain::cylinder) throw ParameterError("expected a cylinder rule");
  if (cylinder.q() != frame.q()) throw ParameterError("cylinder rule and frame disagree on q");
  if (threads <= 0) threads = thread_count_from_env();
  const std::size_t q = static_cast<std::size_t>(cylinder.q());
  return reduce_blocks(cylinder.size(), cylinder.weights(), threads, [&](std::size_t i) {
    cplx local[16];
    cplx mapped[16];
    std::vector<cplx> heap;
    std::span<cplx> x(local, q), z(mapped, q);
    if (q > 16) {
      heap.resize(2 * q);
      x = std::span<cplx>(heap.data(), q);
      z = std::span<cplx>(heap.data() + q, q);
    }
    cylinder_point(cylinder.node(i), x);
    frame.apply(x, z);
    return f(z);
  });
}

double pole_invariance_residual(const Integrand& f, const ComplexPoint& w1, const ComplexPoint& w2,
                                int q, int degree) {
  if (static_cast<int>(w1.dim()) != q || static_cast<int>(w2.dim()) != q)
    throw ParameterError("pole_invariance_residual: poles must lie in C^q");
  const QuadratureRule cyl = cylinder_rule(q, degree);
  const cplx a = cylinder_route_integral(f, frame_from_pole(w1), cyl);
  const cplx b = cylinder_route_integral(f, frame_from_pole(w2), cyl);
  return std::abs(a - b);
}

std::string rule_to_json(const QuadratureRule& rule) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["domain"] = std::string(to_string(rule.domain()));
  j["q"] = rule.q();
  j["dim"] = rule.dim();
  j["exact_degree"] = rule.exact_degree();
  j["measure_mass"] = rule.measure_mass();
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    nlohmann::json node = nlohmann::json::array();
    for (const cplx& c : rule.node(i)) node.push_back({c.real(), c.imag()});
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  j["weights"] = std::vector<double>(rule.weights().begin(), rule.weights().end());
  return j.dump();
}

QuadratureRule rule_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw ParameterError("rule_from_json: unsupported schema_version");
    const int dim = j.at("dim").get<int>();
    std::vector<cplx> nodes;
    for (const auto& node : j.at("nodes")) {
      if (static_cast<int>(node.size()) != dim) throw ParameterError("rule_from_json: bad node size");
      for (const auto& c : node) nodes.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    }
    return QuadratureRule(domain_from_string(j.at("domain").get<std::string>()), j.at("q").get<int>(),
                          dim, j.at("exact_degree").get<int>(), j.at("measure_mass").get<double>(),
                          std::move(nodes), j.at("weights").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("rule_from_json: ") + e.what());
  }
}

}  // namespace fhk
