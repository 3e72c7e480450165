#pragma once
// Finite-alphabet probability primitives behind the bound engines:
// validated distributions and kernels, the factored joint
// p(x) p(t) p(v|t) p(y|x,t), marginalization, and the entropy family.
//
// Every information quantity in this library is measured in bits and
// 0 * log 0 is taken as 0 throughout.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relay/errors.hpp"

namespace relay {

// |sum - 1| tolerated when validating a probability vector.
inline constexpr double kMassTol = 1e-9;

// Entries below this are treated as exact zeros inside logarithms.
inline constexpr double kLogFloor = 1e-15;

// Hard cap on dense joint tables, in cells.
inline constexpr std::size_t kMaxJointCells = 10'000'000;

// Probability vector over a finite alphabet. Entries are nonnegative and
// sum to 1 within kMassTol; both are checked at construction and nothing
// is ever renormalized silently.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> weights);

  static ProbVector uniform(std::size_t n);
  static ProbVector point_mass(std::size_t n, std::size_t at);
  // Explicit renormalization of arbitrary nonnegative weights.
  static ProbVector normalized(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  bool operator==(const ProbVector&) const = default;

 private:
  std::vector<double> weights_;
};

// Row-stochastic matrix; row r is the distribution conditioned on symbol r.
class StochasticMatrix {
 public:
  StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows);
  // Row r is a one-hot at column min(r, cols - 1).
  static StochasticMatrix identity_like(std::size_t rows, std::size_t cols);
  // Every row equals `row`: the output carries no information about the row index.
  static StochasticMatrix constant_rows(std::size_t rows, const ProbVector& row);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  ProbVector row(std::size_t r) const;
  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const StochasticMatrix&) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// A memoryless channel with an i.i.d. state known to neither encoder nor
// decoder directly: alphabet sizes, the state prior p(t), and the kernel
// p(y|x,t) stored dense in [x][t][y] order.
class ChannelSpec {
 public:
  ChannelSpec(std::size_t x_size, std::size_t t_size, std::size_t y_size,
              ProbVector p_t, std::vector<double> kernel);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t t_size() const noexcept { return t_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  const ProbVector& p_t() const noexcept { return p_t_; }
  const std::vector<double>& kernel_table() const noexcept { return kernel_; }

  double kernel(std::size_t x, std::size_t t, std::size_t y) const {
    return kernel_[(x * t_size_ + t) * y_size_ + y];
  }

  // H(T) in bits.
  double state_entropy() const;

  bool operator==(const ChannelSpec&) const = default;

 private:
  std::size_t x_size_, t_size_, y_size_;
  ProbVector p_t_;
  std::vector<double> kernel_;
};

// Dense joint distribution over named axes. The table is row-major with the
// last axis fastest; axis labels are unique and every entry is nonnegative
// with total mass 1 within kMassTol.
class JointDistribution {
 public:
  struct Axis {
    std::string label;
    std::size_t size;
    bool operator==(const Axis&) const = default;
  };

  JointDistribution(std::vector<Axis> axes, std::vector<double> table);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::size_t axis_index(const std::string& label) const;  // LookupError if absent
  double total_mass() const;

  // Entropy in bits of the marginal over `labels` (order irrelevant).
  double entropy_of(const std::vector<std::string>& labels) const;

  // Marginal table over the axes in `indices` (each in [0, axes().size()),
  // strictly ascending). Kept axes preserve their original order.
  std::vector<double> marginal_table(const std::vector<std::size_t>& indices) const;

  // Resolves labels to strictly ascending axis indices, rejecting duplicates.
  std::vector<std::size_t> resolve(const std::vector<std::string>& labels) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> table_;
};

// Shannon entropy of raw weights (assumed a valid distribution; not checked).
double entropy(std::span<const double> weights);
double entropy(const ProbVector& dist);

// h(s) for s in [0, 1].
double binary_entropy(double s);

// Entropy of the three-point distribution (a, b, c); validated.
double ternary_entropy(double a, double b, double c);

// Binary convolution a*b = a(1-b) + b(1-a) for a, b in [0, 1].
double star(double a, double b);

// Joint p(x, t, v, y) = p(x) p(t) p(v|t) p(y|x,t) with axes labeled
// "x", "t", "v", "y" in that order. X and T are independent by construction
// and V depends on the pair only through T.
JointDistribution build_joint(const ProbVector& p_x, const ChannelSpec& channel,
                              const StochasticMatrix& p_v_given_t);

// Marginal joint over `keep` (a nonempty subset of axis labels, any order).
JointDistribution marginalize(const JointDistribution& joint,
                              const std::vector<std::string>& keep);

// I(A; B) between two disjoint axis groups, in bits.
double mutual_information(const JointDistribution& joint,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

// I(A; B | C) for three pairwise disjoint axis groups, in bits.
double conditional_mutual_information(const JointDistribution& joint,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c);

}  // namespace relay
