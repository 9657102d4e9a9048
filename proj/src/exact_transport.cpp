#include "wsl/exact_transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace wsl {

CostMatrix::CostMatrix(Eigen::MatrixXd entries, CostKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  if (entries_.size() == 0) throw DimensionMismatch("empty cost matrix");
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const double c = entries_(i, j);
      if (!std::isfinite(c) || c < 0.0) throw InvalidMeasure("cost entries must be finite and >= 0");
    }
  }
}

namespace {

void require_same_dim(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.ambient_dim() != nu.ambient_dim()) {
    throw DimensionMismatch("measures live in R^" + std::to_string(mu.ambient_dim()) +
                            " and R^" + std::to_string(nu.ambient_dim()));
  }
}

template <typename F>
Eigen::MatrixXd tabulate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, F&& f) {
  require_same_dim(mu, nu);
  Eigen::MatrixXd c(static_cast<Eigen::Index>(mu.size()), static_cast<Eigen::Index>(nu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(mu.point(i), nu.point(j));
    }
  }
  return c;
}

}  // namespace

CostMatrix chord_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
  return CostMatrix(tabulate(mu, nu,
                             [p](const Vector& x, const Vector& y) {
                               const double d = (x - y).norm();
                               return p == 2.0 ? d * d : std::pow(d, p);
                             }),
                    CostKind::ChordPower);
}

CostMatrix ambient_squared_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return CostMatrix(
      tabulate(mu, nu, [](const Vector& x, const Vector& y) { return (x - y).squaredNorm(); }),
      CostKind::AmbientSquared);
}

CostMatrix c_alpha_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (!mu.on_sphere() || !nu.on_sphere()) throw NotOnSphere("c_alpha needs measures on S^n");
  return CostMatrix(tabulate(mu, nu,
                             [alpha](const Vector& x, const Vector& y) {
                               const double c = 2.0 * (1.0 - ((1.0 - alpha) * x + alpha * y).norm());
                               return std::max(c, 0.0);
                             }),
                    CostKind::CAlpha);
}

CostMatrix custom_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::function<double(const Vector&, const Vector&)>& cost) {
  return CostMatrix(tabulate(mu, nu, cost), CostKind::Custom);
}

namespace {

// Flow value plus the coefficient of a symbolic perturbation epsilon.
// Supplies are a_i + eps and the last demand is b_n + m eps, which makes every
// basic solution nondegenerate in the lexicographic order.
struct LexFlow {
  double value = 0.0;
  double eps = 0.0;
};

class TransportSimplex {
 public:
  TransportSimplex(const Vector& supply, const Vector& demand, const Eigen::MatrixXd& cost,
                   const SolverOptions& opt)
      : a_(supply), b_(demand), c_(cost), opt_(opt), m_(supply.size()), n_(demand.size()) {
    scale_ = std::max(1.0, c_.cwiseAbs().maxCoeff());
    tol_ = opt_.pivot_tolerance;
    slot_.assign(static_cast<std::size_t>(m_ * n_), -1);
  }

  TransportPlan run() {
    northwest_corner();
    const long cap = opt_.max_pivots > 0 ? opt_.max_pivots
                                         : std::max<long>(10000, 200L * (m_ + n_));
    int stalled = 0;
    long pivots = 0;
    for (;;) {
      compute_potentials();
      const bool bland = stalled >= opt_.bland_after;
      const auto [ei, ej] = entering_cell(bland);
      if (ei < 0) break;
      if (++pivots > cap) {
        throw SolverStall("transport simplex exceeded " + std::to_string(cap) + " pivots");
      }
      const bool improving = pivot(ei, ej);
      stalled = improving ? 0 : stalled + 1;
    }
    return extract(static_cast<int>(pivots));
  }

 private:
  struct Cell {
    Eigen::Index i;
    Eigen::Index j;
    LexFlow flow;
  };

  bool lex_less(const LexFlow& x, const LexFlow& y) const {
    if (std::abs(x.value - y.value) > tol_) return x.value < y.value;
    return x.eps < y.eps;
  }
  bool lex_equal(const LexFlow& x, const LexFlow& y) const {
    return std::abs(x.value - y.value) <= tol_ && x.eps == y.eps;
  }

  std::size_t key(Eigen::Index i, Eigen::Index j) const {
    return static_cast<std::size_t>(i * n_ + j);
  }

  void add_basic(Eigen::Index i, Eigen::Index j, LexFlow f) {
    slot_[key(i, j)] = static_cast<int>(basis_.size());
    basis_.push_back({i, j, f});
  }

  void northwest_corner() {
    std::vector<LexFlow> s(static_cast<std::size_t>(m_));
    std::vector<LexFlow> d(static_cast<std::size_t>(n_));
    for (Eigen::Index i = 0; i < m_; ++i) s[static_cast<std::size_t>(i)] = {a_[i], 1.0};
    for (Eigen::Index j = 0; j < n_; ++j) d[static_cast<std::size_t>(j)] = {b_[j], 0.0};
    d.back().eps = static_cast<double>(m_);

    Eigen::Index i = 0;
    Eigen::Index j = 0;
    for (;;) {
      LexFlow& si = s[static_cast<std::size_t>(i)];
      LexFlow& dj = d[static_cast<std::size_t>(j)];
      const bool row_first = !lex_less(dj, si);
      const LexFlow x = row_first ? si : dj;
      add_basic(i, j, x);
      si = {si.value - x.value, si.eps - x.eps};
      dj = {dj.value - x.value, dj.eps - x.eps};
      if (i == m_ - 1 && j == n_ - 1) break;
      if ((row_first && i < m_ - 1) || j == n_ - 1) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Node ids: rows 0..m-1, columns m..m+n-1.
  void build_adjacency() {
    adj_.assign(static_cast<std::size_t>(m_ + n_), {});
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      adj_[static_cast<std::size_t>(basis_[k].i)].push_back(static_cast<int>(k));
      adj_[static_cast<std::size_t>(m_ + basis_[k].j)].push_back(static_cast<int>(k));
    }
  }

  void compute_potentials() {
    build_adjacency();
    u_.assign(static_cast<std::size_t>(m_), 0.0);
    v_.assign(static_cast<std::size_t>(n_), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(m_ + n_), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const Eigen::Index node = stack.back();
      stack.pop_back();
      for (int k : adj_[static_cast<std::size_t>(node)]) {
        const Cell& cell = basis_[static_cast<std::size_t>(k)];
        const Eigen::Index other = node < m_ ? m_ + cell.j : cell.i;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = true;
        if (node < m_) {
          v_[static_cast<std::size_t>(cell.j)] = c_(cell.i, cell.j) - u_[static_cast<std::size_t>(cell.i)];
        } else {
          u_[static_cast<std::size_t>(cell.i)] = c_(cell.i, cell.j) - v_[static_cast<std::size_t>(cell.j)];
        }
        stack.push_back(other);
      }
    }
  }

  double reduced_cost(Eigen::Index i, Eigen::Index j) const {
    return c_(i, j) - u_[static_cast<std::size_t>(i)] - v_[static_cast<std::size_t>(j)];
  }

  std::pair<Eigen::Index, Eigen::Index> entering_cell(bool bland) const {
    const double threshold = -tol_ * scale_;
    double best = threshold;
    std::pair<Eigen::Index, Eigen::Index> pick{-1, -1};
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (slot_[key(i, j)] >= 0) continue;
        const double r = reduced_cost(i, j);
        if (r < best) {
          pick = {i, j};
          if (bland) return pick;
          best = r;
        }
      }
    }
    return pick;
  }

  // Returns whether the pivot moved a non-negligible amount of original flow.
  bool pivot(Eigen::Index ei, Eigen::Index ej) {
    // Tree path from row node ei to column node m + ej.
    const std::size_t nodes = static_cast<std::size_t>(m_ + n_);
    std::vector<int> parent_edge(nodes, -1);
    std::vector<bool> seen(nodes, false);
    std::vector<Eigen::Index> stack{ei};
    seen[static_cast<std::size_t>(ei)] = true;
    const Eigen::Index target = m_ + ej;
    while (!stack.empty()) {
      const Eigen::Index node = stack.back();
      stack.pop_back();
      if (node == target) break;
      for (int k : adj_[static_cast<std::size_t>(node)]) {
        const Cell& cell = basis_[static_cast<std::size_t>(k)];
        const Eigen::Index other = node < m_ ? m_ + cell.j : cell.i;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = true;
        parent_edge[static_cast<std::size_t>(other)] = k;
        stack.push_back(other);
      }
    }

    // Edges collected walking back from the column; even positions lose flow.
    std::vector<int> path;
    for (Eigen::Index node = target; node != ei;) {
      const int k = parent_edge[static_cast<std::size_t>(node)];
      path.push_back(k);
      const Cell& cell = basis_[static_cast<std::size_t>(k)];
      node = node < m_ ? m_ + cell.j : cell.i;
    }

    int leave = -1;
    for (std::size_t q = 0; q < path.size(); q += 2) {
      const int k = path[q];
      if (leave < 0) {
        leave = k;
        continue;
      }
      const LexFlow& f = basis_[static_cast<std::size_t>(k)].flow;
      const LexFlow& g = basis_[static_cast<std::size_t>(leave)].flow;
      if (lex_less(f, g) ||
          (lex_equal(f, g) && key(basis_[static_cast<std::size_t>(k)].i, basis_[static_cast<std::size_t>(k)].j) <
                                  key(basis_[static_cast<std::size_t>(leave)].i, basis_[static_cast<std::size_t>(leave)].j))) {
        leave = k;
      }
    }

    const LexFlow theta = basis_[static_cast<std::size_t>(leave)].flow;
    for (std::size_t q = 0; q < path.size(); ++q) {
      LexFlow& f = basis_[static_cast<std::size_t>(path[q])].flow;
      const double sign = (q % 2 == 0) ? -1.0 : 1.0;
      f.value += sign * theta.value;
      f.eps += sign * theta.eps;
    }

    Cell& out = basis_[static_cast<std::size_t>(leave)];
    slot_[key(out.i, out.j)] = -1;
    out = {ei, ej, theta};
    slot_[key(ei, ej)] = leave;
    return theta.value > tol_;
  }

  // Flows of the final basis recomputed from the unperturbed marginals by leaf peeling.
  TransportPlan extract(int pivots) {
    compute_potentials();
    const std::size_t nodes = static_cast<std::size_t>(m_ + n_);
    std::vector<double> residual(nodes);
    for (Eigen::Index i = 0; i < m_; ++i) residual[static_cast<std::size_t>(i)] = a_[i];
    for (Eigen::Index j = 0; j < n_; ++j) residual[static_cast<std::size_t>(m_ + j)] = b_[j];
    std::vector<int> degree(nodes, 0);
    for (std::size_t node = 0; node < nodes; ++node) degree[node] = static_cast<int>(adj_[node].size());
    std::vector<bool> done(basis_.size(), false);
    std::vector<double> flow(basis_.size(), 0.0);

    std::vector<std::size_t> leaves;
    for (std::size_t node = 0; node < nodes; ++node) {
      if (degree[node] == 1) leaves.push_back(node);
    }
    while (!leaves.empty()) {
      const std::size_t node = leaves.back();
      leaves.pop_back();
      if (degree[node] != 1) continue;
      int edge = -1;
      for (int k : adj_[node]) {
        if (!done[static_cast<std::size_t>(k)]) edge = k;
      }
      if (edge < 0) continue;
      const Cell& cell = basis_[static_cast<std::size_t>(edge)];
      const std::size_t other = node < static_cast<std::size_t>(m_)
                                    ? static_cast<std::size_t>(m_ + cell.j)
                                    : static_cast<std::size_t>(cell.i);
      flow[static_cast<std::size_t>(edge)] = residual[node];
      residual[other] -= residual[node];
      residual[node] = 0.0;
      done[static_cast<std::size_t>(edge)] = true;
      --degree[node];
      if (--degree[other] == 1) leaves.push_back(other);
    }

    TransportPlan plan;
    plan.pivots = pivots;
    plan.matrix = Eigen::MatrixXd::Zero(m_, n_);
    const double total = std::max(a_.sum(), 1e-300);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      double x = flow[k];
      if (x < -1e-9 * total) {
        throw SolverStall("negative basic flow " + std::to_string(x) + " at extraction");
      }
      if (x <= tol_ * total) x = 0.0;
      plan.matrix(basis_[k].i, basis_[k].j) = x;
    }
    plan.row_marginal = plan.matrix.rowwise().sum();
    plan.col_marginal = plan.matrix.colwise().sum().transpose();
    plan.cost = (plan.matrix.array() * c_.array()).sum();

    for (Eigen::Index i = 0; i < m_ && plan.is_unique_hint; ++i) {
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (slot_[key(i, j)] < 0 && reduced_cost(i, j) <= opt_.uniqueness_threshold) {
          plan.is_unique_hint = false;
          break;
        }
      }
    }
    return plan;
  }

  const Vector& a_;
  const Vector& b_;
  const Eigen::MatrixXd& c_;
  SolverOptions opt_;
  Eigen::Index m_;
  Eigen::Index n_;
  double scale_ = 1.0;
  double tol_ = 1e-12;
  std::vector<Cell> basis_;
  std::vector<int> slot_;
  std::vector<std::vector<int>> adj_;
  std::vector<double> u_;
  std::vector<double> v_;
};

}  // namespace

TransportPlan solve_transport(const Vector& supply, const Vector& demand, const CostMatrix& cost,
                              const SolverOptions& options) {
  if (supply.size() != cost.rows() || demand.size() != cost.cols()) {
    throw DimensionMismatch("marginal sizes do not match the cost matrix");
  }
  if ((supply.array() < 0.0).any() || (demand.array() < 0.0).any()) {
    throw InvalidMeasure("marginals must be nonnegative");
  }
  const double total = supply.sum();
  if (std::abs(total - demand.sum()) > 1e-10 * std::max(1.0, total)) {
    throw InvalidMeasure("supply and demand totals differ");
  }
  return TransportSimplex(supply, demand, cost.entries(), options).run();
}

TransportPlan solve_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const CostMatrix& cost, const SolverOptions& options) {
  return solve_transport(mu.weight_vector(), nu.weight_vector(), cost, options);
}

double wasserstein_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  const TransportPlan plan = solve_transport(mu, nu, chord_cost(mu, nu, p));
  const double c = std::max(plan.cost, 0.0);
  return p == 2.0 ? std::sqrt(c) : std::pow(c, 1.0 / p);
}

double ambient_w2_squared(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return std::max(solve_transport(mu, nu, ambient_squared_cost(mu, nu)).cost, 0.0);
}

void write_plan_csv(std::ostream& out, const TransportPlan& plan) {
  out << "row,col,mass\n";
  char buf[64];
  for (Eigen::Index i = 0; i < plan.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < plan.matrix.cols(); ++j) {
      const double x = plan.matrix(i, j);
      if (x <= 0.0) continue;
      std::snprintf(buf, sizeof buf, "%#.17g", x);
      out << i << ',' << j << ',' << buf << '\n';
    }
  }
}

}  // namespace wsl
