#include "relay/probability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relay {

namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) {
    throw ValidationError(std::string(what) + ": empty distribution");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) {  // also catches NaN
      std::ostringstream msg;
      msg << what << ": entry " << i << " is " << w[i] << ", must be nonnegative";
      throw ValidationError(msg.str());
    }
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    std::ostringstream msg;
    msg << what << ": mass is " << sum << ", outside 1 +/- " << kMassTol;
    throw ValidationError(msg.str());
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> weights) : weights_(std::move(weights)) {
  check_weights(weights_, "ProbVector");
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("ProbVector::uniform: size must be positive");
  return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVector ProbVector::point_mass(std::size_t n, std::size_t at) {
  if (n == 0) throw ValidationError("ProbVector::point_mass: size must be positive");
  if (at >= n) throw ValidationError("ProbVector::point_mass: index out of range");
  std::vector<double> w(n, 0.0);
  w[at] = 1.0;
  return ProbVector(std::move(w));
}

ProbVector ProbVector::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0)) throw ValidationError("ProbVector::normalized: negative weight");
    sum += v;
  }
  if (sum <= 0.0) throw ValidationError("ProbVector::normalized: zero total weight");
  for (double& v : weights) v /= sum;
  return ProbVector(std::move(weights));
}

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) {
    throw ValidationError("StochasticMatrix: rows and cols must be positive");
  }
  if (data_.size() != rows_ * cols_) {
    std::ostringstream msg;
    msg << "StochasticMatrix: expected " << rows_ * cols_ << " entries, got " << data_.size();
    throw ValidationError(msg.str());
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const double v = data_[r * cols_ + c];
      if (!(v >= 0.0)) {
        std::ostringstream msg;
        msg << "StochasticMatrix: row " << r << " entry " << c << " is negative";
        throw ValidationError(msg.str());
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kMassTol) {
      std::ostringstream msg;
      msg << "StochasticMatrix: row " << r << " sums to " << sum;
      throw ValidationError(msg.str());
    }
  }
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("StochasticMatrix::from_rows: no rows");
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw ValidationError("StochasticMatrix::from_rows: ragged rows");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return StochasticMatrix(rows.size(), cols, std::move(data));
}

StochasticMatrix StochasticMatrix::identity_like(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw ValidationError("StochasticMatrix::identity_like: degenerate shape");
  }
  std::vector<double> data(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    data[r * cols + std::min(r, cols - 1)] = 1.0;
  }
  return StochasticMatrix(rows, cols, std::move(data));
}

StochasticMatrix StochasticMatrix::constant_rows(std::size_t rows, const ProbVector& row) {
  if (rows == 0) throw ValidationError("StochasticMatrix::constant_rows: no rows");
  std::vector<double> data;
  data.reserve(rows * row.size());
  for (std::size_t r = 0; r < rows; ++r) {
    data.insert(data.end(), row.weights().begin(), row.weights().end());
  }
  return StochasticMatrix(rows, row.size(), std::move(data));
}

ProbVector StochasticMatrix::row(std::size_t r) const {
  if (r >= rows_) throw ValidationError("StochasticMatrix::row: index out of range");
  return ProbVector(std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)));
}

ChannelSpec::ChannelSpec(std::size_t x_size, std::size_t t_size, std::size_t y_size,
                         ProbVector p_t, std::vector<double> kernel)
    : x_size_(x_size),
      t_size_(t_size),
      y_size_(y_size),
      p_t_(std::move(p_t)),
      kernel_(std::move(kernel)) {
  if (x_size_ == 0 || t_size_ == 0 || y_size_ == 0) {
    throw ValidationError("ChannelSpec: alphabet sizes must be positive");
  }
  if (p_t_.size() != t_size_) {
    std::ostringstream msg;
    msg << "ChannelSpec: p_t has length " << p_t_.size() << ", expected " << t_size_;
    throw ValidationError(msg.str());
  }
  if (kernel_.size() != x_size_ * t_size_ * y_size_) {
    std::ostringstream msg;
    msg << "ChannelSpec: kernel has " << kernel_.size() << " entries, expected "
        << x_size_ * t_size_ * y_size_;
    throw ValidationError(msg.str());
  }
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t t = 0; t < t_size_; ++t) {
      double sum = 0.0;
      for (std::size_t y = 0; y < y_size_; ++y) {
        const double v = kernel_[(x * t_size_ + t) * y_size_ + y];
        if (!(v >= 0.0)) {
          std::ostringstream msg;
          msg << "ChannelSpec: kernel row (x=" << x << ", t=" << t << ") has a negative entry";
          throw ValidationError(msg.str());
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kMassTol) {
        std::ostringstream msg;
        msg << "ChannelSpec: kernel row (x=" << x << ", t=" << t << ") sums to " << sum;
        throw ValidationError(msg.str());
      }
    }
  }
}

double ChannelSpec::state_entropy() const { return entropy(p_t_); }

JointDistribution::JointDistribution(std::vector<Axis> axes, std::vector<double> table)
    : axes_(std::move(axes)), table_(std::move(table)) {
  if (axes_.empty()) throw ValidationError("JointDistribution: no axes");
  std::size_t cells = 1;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].label.empty()) throw ValidationError("JointDistribution: empty axis label");
    if (axes_[a].size == 0) throw ValidationError("JointDistribution: zero-size axis");
    for (std::size_t b = 0; b < a; ++b) {
      if (axes_[b].label == axes_[a].label) {
        throw ValidationError("JointDistribution: duplicate axis label '" + axes_[a].label + "'");
      }
    }
    if (cells > kMaxJointCells / axes_[a].size) {
      throw ValidationError("JointDistribution: product alphabet exceeds the dense-table cap");
    }
    cells *= axes_[a].size;
  }
  if (table_.size() != cells) {
    std::ostringstream msg;
    msg << "JointDistribution: table has " << table_.size() << " cells, axes imply " << cells;
    throw ValidationError(msg.str());
  }
  check_weights(table_, "JointDistribution");
}

std::size_t JointDistribution::axis_index(const std::string& label) const {
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].label == label) return a;
  }
  throw LookupError("JointDistribution: unknown axis label '" + label + "'");
}

double JointDistribution::total_mass() const {
  double sum = 0.0;
  for (double v : table_) sum += v;
  return sum;
}

std::vector<std::size_t> JointDistribution::resolve(const std::vector<std::string>& labels) const {
  if (labels.empty()) throw ValidationError("JointDistribution: empty axis group");
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (const auto& label : labels) idx.push_back(axis_index(label));
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw ValidationError("JointDistribution: duplicate axis in group");
  }
  return idx;
}

std::vector<double> JointDistribution::marginal_table(const std::vector<std::size_t>& indices) const {
  const std::size_t n_ax = axes_.size();
  // Strides into the output table; dropped axes contribute stride 0.
  std::vector<std::size_t> out_stride(n_ax, 0);
  std::size_t out_size = 1;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    out_stride[*it] = out_size;
    out_size *= axes_[*it].size;
  }
  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> counter(n_ax, 0);
  std::size_t oi = 0;
  for (double cell : table_) {
    out[oi] += cell;
    // Odometer increment from the fastest axis, updating oi incrementally.
    for (std::size_t a = n_ax; a-- > 0;) {
      if (++counter[a] < axes_[a].size) {
        oi += out_stride[a];
        break;
      }
      counter[a] = 0;
      oi -= out_stride[a] * (axes_[a].size - 1);
    }
  }
  return out;
}

double JointDistribution::entropy_of(const std::vector<std::string>& labels) const {
  const auto table = marginal_table(resolve(labels));
  return entropy(std::span<const double>(table));
}

double entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double p : weights) {
    if (p < kLogFloor) continue;  // exact zero by convention
    h -= p * std::log2(p);
  }
  return h;
}

double entropy(const ProbVector& dist) { return entropy(std::span<const double>(dist.weights())); }

double binary_entropy(double s) {
  if (!(s >= 0.0) || s > 1.0) {
    throw DomainError("binary_entropy: argument outside [0, 1]");
  }
  const double w[2] = {s, 1.0 - s};
  return entropy(std::span<const double>(w, 2));
}

double ternary_entropy(double a, double b, double c) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || std::abs(a + b + c - 1.0) > kMassTol) {
    throw ValidationError("ternary_entropy: arguments must form a distribution");
  }
  const double w[3] = {a, b, c};
  return entropy(std::span<const double>(w, 3));
}

double star(double a, double b) {
  if (!(a >= 0.0) || a > 1.0 || !(b >= 0.0) || b > 1.0) {
    throw DomainError("star: arguments must lie in [0, 1]");
  }
  return a * (1.0 - b) + b * (1.0 - a);
}

JointDistribution build_joint(const ProbVector& p_x, const ChannelSpec& channel,
                              const StochasticMatrix& p_v_given_t) {
  if (p_x.size() != channel.x_size()) {
    std::ostringstream msg;
    msg << "build_joint: p_x has length " << p_x.size() << ", channel expects "
        << channel.x_size();
    throw ValidationError(msg.str());
  }
  if (p_v_given_t.rows() != channel.t_size()) {
    std::ostringstream msg;
    msg << "build_joint: p(v|t) has " << p_v_given_t.rows() << " rows, channel expects "
        << channel.t_size();
    throw ValidationError(msg.str());
  }
  const std::size_t nx = channel.x_size();
  const std::size_t nt = channel.t_size();
  const std::size_t nv = p_v_given_t.cols();
  const std::size_t ny = channel.y_size();
  std::vector<double> table(nx * nt * nv * ny);
  std::size_t i = 0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t t = 0; t < nt; ++t) {
      const double pxt = p_x[x] * channel.p_t()[t];
      for (std::size_t v = 0; v < nv; ++v) {
        const double pxtv = pxt * p_v_given_t(t, v);
        for (std::size_t y = 0; y < ny; ++y) {
          table[i++] = pxtv * channel.kernel(x, t, y);
        }
      }
    }
  }
  return JointDistribution({{"x", nx}, {"t", nt}, {"v", nv}, {"y", ny}}, std::move(table));
}

JointDistribution marginalize(const JointDistribution& joint,
                              const std::vector<std::string>& keep) {
  const auto idx = joint.resolve(keep);
  std::vector<JointDistribution::Axis> axes;
  axes.reserve(idx.size());
  for (std::size_t a : idx) axes.push_back(joint.axes()[a]);
  return JointDistribution(std::move(axes), joint.marginal_table(idx));
}

namespace {

std::vector<std::size_t> resolve_disjoint(const JointDistribution& joint,
                                          const std::vector<std::vector<std::string>>& groups) {
  std::vector<std::size_t> all;
  for (const auto& g : groups) {
    const auto idx = joint.resolve(g);
    all.insert(all.end(), idx.begin(), idx.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ValidationError("mutual information: axis groups overlap");
  }
  return all;
}

double entropy_of_indices(const JointDistribution& joint, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  const auto table = joint.marginal_table(idx);
  return entropy(std::span<const double>(table));
}

}  // namespace

double mutual_information(const JointDistribution& joint,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  resolve_disjoint(joint, {a, b});
  const auto ia = joint.resolve(a);
  const auto ib = joint.resolve(b);
  std::vector<std::size_t> iab(ia);
  iab.insert(iab.end(), ib.begin(), ib.end());
  // I(A;B) = H(A) + H(B) - H(A,B)
  return entropy_of_indices(joint, ia) + entropy_of_indices(joint, ib) -
         entropy_of_indices(joint, iab);
}

double conditional_mutual_information(const JointDistribution& joint,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) {
  resolve_disjoint(joint, {a, b, c});
  const auto ia = joint.resolve(a);
  const auto ib = joint.resolve(b);
  const auto ic = joint.resolve(c);
  auto join = [](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
    std::vector<std::size_t> w(u);
    w.insert(w.end(), v.begin(), v.end());
    return w;
  };
  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
  return entropy_of_indices(joint, join(ia, ic)) + entropy_of_indices(joint, join(ib, ic)) -
         entropy_of_indices(joint, join(join(ia, ib), ic)) - entropy_of_indices(joint, ic);
}

}  // namespace relay
