#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkr {

inline constexpr int kMaxComponents = 3;

enum class ErrorKind { config, positivity, numerical, boundary, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};
struct PositivityError : Error {
  PositivityError(const std::string& w, int cell = -1) : Error(ErrorKind::positivity, w), cell(cell) {}
  int cell;
};
struct NumericalError : Error {
  NumericalError(const std::string& w, int cell = -1) : Error(ErrorKind::numerical, w), cell(cell) {}
  int cell;
};
struct BoundaryError : Error {
  explicit BoundaryError(const std::string& w) : Error(ErrorKind::boundary, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};

// Small fixed-capacity state vector; only the first m entries are meaningful.
struct State {
  std::array<double, kMaxComponents> v{};

  constexpr double& operator[](int k) { return v[static_cast<std::size_t>(k)]; }
  constexpr double operator[](int k) const { return v[static_cast<std::size_t>(k)]; }

  State& operator+=(const State& o) {
    for (int k = 0; k < kMaxComponents; ++k) v[k] += o.v[k];
    return *this;
  }
  State& operator-=(const State& o) {
    for (int k = 0; k < kMaxComponents; ++k) v[k] -= o.v[k];
    return *this;
  }
  State& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(double s, State a) { return a *= s; }
  friend State operator*(State a, double s) { return a *= s; }
  friend State operator/(State a, double s) { return a *= 1.0 / s; }
  friend bool operator==(const State&, const State&) = default;
};

bool all_finite(const State& u, int m);

class Mesh1D {
 public:
  Mesh1D(double a, double b, int nx);

  double a() const { return a_; }
  double b() const { return b_; }
  int nx() const { return nx_; }
  double dx() const { return dx_; }
  // Valid for ghost indices too (i < 0 or i >= nx).
  double center(int i) const { return a_ + (i + 0.5) * dx_; }
  double left(int i) const { return a_ + i * dx_; }
  double right(int i) const { return a_ + (i + 1) * dx_; }

  friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

 private:
  double a_, b_;
  int nx_;
  double dx_;
};

struct QuadratureRule {
  std::vector<double> nodes;    // in [0,1]
  std::vector<double> weights;  // sum to 1
  int order = 1;

  static QuadratureRule midpoint();
  static QuadratureRule gauss2();
  int size() const { return static_cast<int>(nodes.size()); }
  double node(const Mesh1D& mesh, int cell, int m) const { return mesh.left(cell) + nodes[m] * mesh.dx(); }
};

using PointwiseFn = std::function<State(double)>;

State cell_average(const PointwiseFn& f, const Mesh1D& mesh, int cell, const QuadratureRule& q);

class CellField {
 public:
  CellField(Mesh1D mesh, int m);
  CellField(Mesh1D mesh, int m, std::vector<State> values);

  const Mesh1D& mesh() const { return mesh_; }
  int m() const { return m_; }
  int nx() const { return mesh_.nx(); }
  State& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  const State& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<State>& values() const { return values_; }
  std::vector<State>& values() { return values_; }
  bool finite() const;

 private:
  Mesh1D mesh_;
  int m_;
  std::vector<State> values_;
};

CellField project(const PointwiseFn& f, const Mesh1D& mesh, int m, const QuadratureRule& q);

// dx * sum_i |u_i - ref_i| per component.
std::vector<double> l1_error(const CellField& u, const CellField& ref);

// As l1_error but only over cells whose center lies in one of the [lo, hi] windows.
std::vector<double> l1_error_windowed(const CellField& u, const CellField& ref,
                                      const std::vector<std::array<double, 2>>& windows);

std::vector<double> max_norm(const CellField& u);

}  // namespace hkr
