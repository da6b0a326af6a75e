#include "oba/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oba/rng.hpp"

namespace oba {

std::vector<double> Dataset::binary_labels() const {
  for (double v : y)
    if (v != 1.0 && v != -1.0)
      throw std::invalid_argument("Dataset: labels are not all -1/+1");
  return y;
}

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("read_libsvm: line " + std::to_string(line_no) +
                           ": " + what);
}

double parse_real(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) parse_error(line_no, "trailing characters in '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    parse_error(line_no, "cannot parse number '" + tok + "'");
  } catch (const std::out_of_range&) {
    parse_error(line_no, "number out of range '" + tok + "'");
  }
}

}  // namespace

Dataset read_libsvm(const std::string& path,
                    const std::optional<std::map<double, double>>& label_map) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_libsvm: cannot open " + path);

  std::map<double, double> mapping =
      label_map ? *label_map : std::map<double, double>{{0.0, -1.0}, {1.0, 1.0}};

  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;
  std::vector<double> labels;
  std::size_t n_cols = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only line

    double label = parse_real(tok, line_no);
    if (auto it = mapping.find(label); it != mapping.end()) label = it->second;
    labels.push_back(label);

    long prev_idx = 0;  // 1-based; entries must strictly increase
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_error(line_no, "malformed feature token '" + tok + "'");
      std::string idx_s = tok.substr(0, colon);
      long idx = 0;
      auto [p, ec] = std::from_chars(idx_s.data(), idx_s.data() + idx_s.size(), idx);
      if (ec != std::errc() || p != idx_s.data() + idx_s.size() || idx < 1)
        parse_error(line_no, "bad feature index '" + idx_s + "'");
      if (idx == prev_idx)
        parse_error(line_no, "duplicate feature index " + std::to_string(idx));
      if (idx < prev_idx)
        parse_error(line_no, "feature indices not increasing at " + std::to_string(idx));
      prev_idx = idx;
      double val = parse_real(tok.substr(colon + 1), line_no);
      col_idx.push_back(static_cast<std::uint32_t>(idx - 1));
      values.push_back(val);
      n_cols = std::max(n_cols, static_cast<std::size_t>(idx));
    }
    row_ptr.push_back(values.size());
  }

  Dataset ds;
  ds.a = SparseMatrix(labels.size(), n_cols, std::move(row_ptr),
                      std::move(col_idx), std::move(values));
  ds.y = std::move(labels);
  return ds;
}

void write_libsvm(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_libsvm: cannot open " + path);
  char buf[64];
  const auto& rp = ds.a.row_ptr();
  const auto& ci = ds.a.col_idx();
  const auto& v = ds.a.values();
  for (std::size_t i = 0; i < ds.a.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", ds.y[i]);
    out << buf;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", v[k]);
      out << ' ' << (ci[k] + 1) << ':' << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_libsvm: write failed for " + path);
}

Dataset normalize_features(const Dataset& ds) {
  std::vector<double> col_max(ds.a.cols(), 0.0);
  const auto& rp = ds.a.row_ptr();
  const auto& ci = ds.a.col_idx();
  const auto& v = ds.a.values();
  for (std::size_t i = 0; i < ds.a.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
      col_max[ci[k]] = std::max(col_max[ci[k]], std::abs(v[k]));

  std::vector<double> scaled = v;
  for (std::size_t i = 0; i < ds.a.rows(); ++i)
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
      if (col_max[ci[k]] > 0.0) scaled[k] = v[k] / col_max[ci[k]];

  Dataset out;
  out.a = SparseMatrix(ds.a.rows(), ds.a.cols(), rp,
                       std::vector<std::uint32_t>(ci), std::move(scaled));
  out.y = ds.y;
  return out;
}

namespace {

// λ_max of a symmetric dense matrix by power iteration (row-major storage).
double dense_lambda_max(const std::vector<double>& m, std::size_t n,
                        Uniform01& rng, double shift, double sign) {
  // iterates on sign*M + shift*I
  DenseVector v(n);
  for (double& x : v) x = rng.next_signed();
  double nv = norm2(v);
  scale(v, 1.0 / nv);
  double lambda = 0.0, prev = 0.0;
  for (std::size_t it = 0; it < 1000; ++it) {
    DenseVector w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = &m[i * n];
      for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
      w[i] = sign * s + shift * v[i];
    }
    double nw = norm2(w);
    if (nw == 0.0) return shift;
    lambda = dot(v, w);
    scale(w, 1.0 / nw);
    v = std::move(w);
    if (it > 10 && std::abs(lambda - prev) <= 1e-10 * std::abs(lambda)) break;
    prev = lambda;
  }
  return lambda;
}

// In-place lower Cholesky L with L·Lᵀ = M; returns false on a non-positive
// pivot. Row-major, only the lower triangle of `l` is written.
bool dense_cholesky_lower(const std::vector<double>& m, std::size_t n,
                          std::vector<double>& l) {
  l.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m[i * n + j];
      const double* li = &l[i * n];
      const double* lj = &l[j * n];
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      if (i == j) {
        if (s <= 0.0) return false;
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return true;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) throw std::invalid_argument("generate_synthetic: n must be >= 2");
  Uniform01 rng(spec.seed);

  std::vector<double> labels(n);
  for (double& y : labels) y = rng.next() > 0.5 ? 1.0 : -1.0;

  std::vector<double> m(n * n);
  for (double& x : m) x = rng.next();
  // symmetrize: M = R + Rᵀ
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      double s = m[i * n + j] + m[j * n + i];
      m[i * n + j] = s;
      m[j * n + i] = s;
    }
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] *= 2.0;

  // λ_min via two power iterations: λ_max(M), then λ_max(λ_max·I − M)
  Uniform01 eig_rng(spec.seed ^ 0x5bd1e995u);
  double lmax = dense_lambda_max(m, n, eig_rng, 0.0, 1.0);
  double lmin = lmax - dense_lambda_max(m, n, eig_rng, lmax, -1.0);
  if (lmin < 0.0)
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += -2.0 * lmin;

  std::vector<double> l;
  if (!dense_cholesky_lower(m, n, l)) {
    // exact-zero edge after the shift; nudge once and retry
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += 1e-10;
    if (!dense_cholesky_lower(m, n, l))
      throw std::runtime_error("generate_synthetic: Cholesky failed after shift");
  }

  // data matrix X = Lᵀ (upper triangular), XᵀX = M
  std::vector<double> x(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) x[j * n + i] = l[i * n + j];

  Dataset ds;
  ds.a = SparseMatrix::from_dense(n, n, x);
  ds.y = std::move(labels);
  return ds;
}

}  // namespace oba
