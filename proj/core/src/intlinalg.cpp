#include "hocoalg/intlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hocoalg/errors.hpp"

namespace hocoalg {

namespace {

// Systems above this many entries go through lattice_kernel.
constexpr std::size_t kDenseLimit = 64 * 64;

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Entry> entries) {
  IntMatrix m(rows, cols);
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw std::out_of_range("IntMatrix: entry outside matrix shape");
    }
    if (!m.entries_.empty() && m.entries_.back().row == e.row &&
        m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
      if (m.entries_.back().value == 0) m.entries_.pop_back();
    } else if (e.value != 0) {
      m.entries_.push_back(std::move(e));
    }
  }
  return m;
}

IntMatrix IntMatrix::from_dense(std::size_t rows, std::size_t cols,
                                const std::vector<Integer>& values) {
  if (values.size() != rows * cols) {
    throw std::invalid_argument("IntMatrix::from_dense: size mismatch");
  }
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Integer& v = values[r * cols + c];
      if (v != 0) m.entries_.push_back({r, c, v});
    }
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0) m.entries_.push_back({r, c, Integer(rows[r][c])});
    }
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  const std::vector<IntVector>& columns) {
  std::vector<Entry> entries;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (columns[c][r] != 0) entries.push_back({r, c, columns[c][r]});
    }
  }
  return from_triplets(rows, columns.size(), std::move(entries));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  m.entries_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Integer(1)});
  return m;
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::make_pair(r, c),
      [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
        return e.row != key.first ? e.row < key.first : e.col < key.second;
      });
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

std::vector<Integer> IntMatrix::dense() const {
  std::vector<Integer> out(rows_ * cols_);
  for (const auto& e : entries_) out[e.row * cols_ + e.col] = e.value;
  return out;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (const auto& e : entries_) {
    if (e.col == c) out[e.row] = e.value;
  }
  return out;
}

IntVector IntMatrix::row(std::size_t r) const {
  IntVector out(cols_);
  for (const auto& e : entries_) {
    if (e.row == r) out[e.col] = e.value;
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(entries));
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("IntMatrix::operator*: shape mismatch");
  }
  // Row offsets of `other`.
  std::vector<std::size_t> start(other.rows_ + 1, 0);
  for (const auto& e : other.entries_) ++start[e.row + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());

  IntMatrix out(rows_, other.cols_);
  std::vector<Integer> acc(other.cols_);
  std::vector<char> touched(other.cols_, 0);
  std::vector<std::size_t> touched_list;
  std::size_t i = 0;
  while (i < entries_.size()) {
    const std::size_t row = entries_[i].row;
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const auto& a = entries_[i];
      for (std::size_t k = start[a.col]; k < start[a.col + 1]; ++k) {
        const auto& b = other.entries_[k];
        if (!touched[b.col]) {
          touched[b.col] = 1;
          touched_list.push_back(b.col);
          acc[b.col] = 0;
        }
        acc[b.col] += a.value * b.value;
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    for (std::size_t c : touched_list) {
      if (acc[c] != 0) out.entries_.push_back({row, c, acc[c]});
      touched[c] = 0;
    }
    touched_list.clear();
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (v.size() != cols_) {
    throw std::invalid_argument("IntMatrix * vector: shape mismatch");
  }
  IntVector out(rows_);
  for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("IntMatrix::operator+: shape mismatch");
  }
  std::vector<Entry> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return from_triplets(rows_, cols_, std::move(entries));
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  return *this + (-other);
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out = *this;
  for (auto& e : out.entries_) e.value = -e.value;
  return out;
}

IntMatrix IntMatrix::scaled(const Integer& s) const {
  if (s == 0) return IntMatrix(rows_, cols_);
  IntMatrix out = *this;
  for (auto& e : out.entries_) e.value *= s;
  return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::vector<std::size_t>> where(rows_);
  for (std::size_t i = 0; i < rows.size(); ++i) where.at(rows[i]).push_back(i);
  std::vector<Entry> entries;
  for (const auto& e : entries_) {
    for (std::size_t r : where[e.row]) entries.push_back({r, e.col, e.value});
  }
  return from_triplets(rows.size(), cols_, std::move(entries));
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  std::vector<std::vector<std::size_t>> where(cols_);
  for (std::size_t i = 0; i < cols.size(); ++i) where.at(cols[i]).push_back(i);
  std::vector<Entry> entries;
  for (const auto& e : entries_) {
    for (std::size_t c : where[e.col]) entries.push_back({e.row, c, e.value});
  }
  return from_triplets(rows_, cols.size(), std::move(entries));
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
  std::vector<Entry> entries = a.entries_;
  for (const auto& e : b.entries_) entries.push_back({e.row, e.col + a.cols_, e.value});
  return from_triplets(a.rows_, a.cols_ + b.cols_, std::move(entries));
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  out.entries_ = a.entries_;
  for (const auto& e : b.entries_) out.entries_.push_back({e.row + a.rows_, e.col, e.value});
  return out;
}

IntMatrix IntMatrix::block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.entries_ = a.entries_;
  for (const auto& e : b.entries_) {
    out.entries_.push_back({e.row + a.rows_, e.col + a.cols_, e.value});
  }
  return out;
}

IntMatrix IntMatrix::reduced_rows(const std::vector<Integer>& moduli) const {
  if (moduli.size() != rows_) {
    throw std::invalid_argument("reduced_rows: moduli length mismatch");
  }
  IntMatrix out(rows_, cols_);
  for (const auto& e : entries_) {
    const Integer& t = moduli[e.row];
    if (t > 0) {
      Integer v;
      mpz_fdiv_r(v.get_mpz_t(), e.value.get_mpz_t(), t.get_mpz_t());
      if (v != 0) out.entries_.push_back({e.row, e.col, v});
    } else {
      out.entries_.push_back(e);
    }
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& a = entries_[i];
    const auto& b = other.entries_[i];
    if (a.row != b.row || a.col != b.col || a.value != b.value) return false;
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  const auto d = dense();
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) {
      os << (c ? ", " : "") << d[r * cols_ + c].get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

IntVector reduced(const IntVector& v, const std::vector<Integer>& moduli) {
  if (v.size() != moduli.size()) {
    throw std::invalid_argument("reduced: moduli length mismatch");
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (moduli[i] > 0) {
      mpz_fdiv_r(out[i].get_mpz_t(), v[i].get_mpz_t(), moduli[i].get_mpz_t());
    } else {
      out[i] = v[i];
    }
  }
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(invariant_factors.begin(), invariant_factors.end(),
                    [](const Integer& d) { return d != 0; }));
}

namespace {

// Dense row-major scratch matrix.
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  explicit Dense(const IntMatrix& m) : rows(m.rows()), cols(m.cols()), a(m.dense()) {}
  static Dense identity(std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 1;
    return d;
  }

  Integer& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i -= q * row_t, columns [from, cols)
  void row_axpy(std::size_t i, const Integer& q, std::size_t t, std::size_t from = 0) {
    Integer* ri = &a[i * cols];
    const Integer* rt = &a[t * cols];
    for (std::size_t c = from; c < cols; ++c) {
      if (sgn(rt[c]) != 0) mpz_submul(ri[c].get_mpz_t(), q.get_mpz_t(), rt[c].get_mpz_t());
    }
  }
  // col_j -= q * col_t, rows [from, rows)
  void col_axpy(std::size_t j, const Integer& q, std::size_t t, std::size_t from = 0) {
    for (std::size_t r = from; r < rows; ++r) {
      const Integer& v = (*this)(r, t);
      if (sgn(v) != 0) mpz_submul((*this)(r, j).get_mpz_t(), q.get_mpz_t(), v.get_mpz_t());
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols; ++c) {
      Integer& v = (*this)(i, c);
      if (sgn(v) != 0) v = -v;
    }
  }

  IntMatrix to_matrix() const { return IntMatrix::from_dense(rows, cols, a); }
};

inline int cmpabs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

struct SmithState {
  Dense A;
  Dense U;     // row transforms
  Dense Uinv;  // inverse of U (column transforms)
  Dense V;     // column transforms
  bool track = false;
  bool track_inverse = false;

  // Row operation row_i -= q row_t applied consistently.
  void row_op(std::size_t i, const Integer& q, std::size_t t, std::size_t from) {
    A.row_axpy(i, q, t, from);
    if (track) U.row_axpy(i, q, t);
    if (track_inverse) {
      // U <- E U with E = I - q e_i e_t^T, so Uinv <- Uinv (I + q e_i e_t^T):
      // column t of Uinv gains q * column i.
      Integer mq = -q;
      Uinv.col_axpy(t, mq, i);
    }
  }
  void col_op(std::size_t j, const Integer& q, std::size_t t, std::size_t from) {
    A.col_axpy(j, q, t, from);
    if (track) V.col_axpy(j, q, t);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    if (track) U.swap_rows(i, j);
    if (track_inverse) Uinv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    if (track) V.swap_cols(i, j);
  }
  void negate_row(std::size_t i) {
    A.negate_row(i);
    if (track) U.negate_row(i);
    if (track_inverse) {
      for (std::size_t r = 0; r < Uinv.rows; ++r) {
        Integer& v = Uinv(r, i);
        if (sgn(v) != 0) v = -v;
      }
    }
  }
};

void run_smith(SmithState& s) {
  Dense& A = s.A;
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;
  const std::size_t steps = std::min(m, n);
  std::vector<std::size_t> row_nnz(m), col_nnz(n);
  Integer q, best;

  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot: smallest |entry| in the trailing block, ties broken by the
    // Markowitz fill-in estimate.
    std::fill(row_nnz.begin(), row_nnz.end(), 0);
    std::fill(col_nnz.begin(), col_nnz.end(), 0);
    bool found = false;
    for (std::size_t r = t; r < m; ++r) {
      for (std::size_t c = t; c < n; ++c) {
        const Integer& v = A(r, c);
        if (sgn(v) == 0) continue;
        ++row_nnz[r];
        ++col_nnz[c];
        if (!found || cmpabs(v, best) < 0) {
          best = abs(v);
          found = true;
        }
      }
    }
    if (!found) break;
    std::size_t pr = t, pc = t;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    for (std::size_t r = t; r < m; ++r) {
      for (std::size_t c = t; c < n; ++c) {
        const Integer& v = A(r, c);
        if (sgn(v) == 0 || cmpabs(v, best) != 0) continue;
        const std::size_t cost = (row_nnz[r] - 1) * (col_nnz[c] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          pr = r;
          pc = c;
        }
      }
    }
    s.swap_rows(t, pr);
    s.swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(A(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        if (q != 0) s.row_op(i, q, t, t);
        if (sgn(A(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(A(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        if (q != 0) s.col_op(j, q, t, t);
        if (sgn(A(t, j)) != 0) clean = false;
      }
      if (clean) break;
      // A remainder survived: move the smallest one into the pivot slot.
      std::size_t br = t, bc = t;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(A(i, t)) != 0 && cmpabs(A(i, t), A(br, bc)) < 0) {
          br = i;
          bc = t;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(A(t, j)) != 0 && cmpabs(A(t, j), A(br, bc)) < 0) {
          br = t;
          bc = j;
        }
      }
      s.swap_rows(t, br);
      s.swap_cols(t, bc);
    }
    if (sgn(A(t, t)) < 0) s.negate_row(t);
  }
}

// Enforce d_i | d_j on the diagonal with 2x2 unimodular moves.
void fix_divisibility(SmithState& s, std::size_t rank) {
  Dense& A = s.A;
  Integer g, x, y, a_g, b_g, tmp1, tmp2;
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = i + 1; j < rank; ++j) {
      const Integer a = A(i, i);
      const Integer b = A(j, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      a_g = a / g;
      b_g = b / g;
      A(i, i) = g;
      A(j, j) = a_g * b;  // lcm
      if (s.track) {
        // Rows i, j of U <- [[x, y], [-b/g, a/g]] * rows.
        Dense& U = s.U;
        for (std::size_t c = 0; c < U.cols; ++c) {
          tmp1 = x * U(i, c) + y * U(j, c);
          tmp2 = -b_g * U(i, c) + a_g * U(j, c);
          U(i, c) = tmp1;
          U(j, c) = tmp2;
        }
        // Columns i, j of V <- cols * [[1, -y b/g], [1, x a/g]].
        Dense& V = s.V;
        for (std::size_t r = 0; r < V.rows; ++r) {
          tmp1 = V(r, i) + V(r, j);
          tmp2 = -y * b_g * V(r, i) + x * a_g * V(r, j);
          V(r, i) = tmp1;
          V(r, j) = tmp2;
        }
      }
      if (s.track_inverse) {
        // Uinv <- Uinv * [[a/g, -y], [b/g, x]].
        Dense& W = s.Uinv;
        for (std::size_t r = 0; r < W.rows; ++r) {
          tmp1 = W(r, i) * a_g + W(r, j) * b_g;
          tmp2 = -W(r, i) * y + W(r, j) * x;
          W(r, i) = tmp1;
          W(r, j) = tmp2;
        }
      }
    }
  }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m, SmithOptions options) {
  SmithState s;
  s.A = Dense(m);
  s.track = options.transforms || options.inverse_left;
  s.track_inverse = options.inverse_left;
  if (s.track) {
    s.U = Dense::identity(m.rows());
    s.V = Dense::identity(m.cols());
  }
  if (s.track_inverse) s.Uinv = Dense::identity(m.rows());

  run_smith(s);
  std::size_t rank = 0;
  while (rank < std::min(m.rows(), m.cols()) && sgn(s.A(rank, rank)) != 0) ++rank;
  fix_divisibility(s, rank);

  SmithDecomposition out;
  out.D = s.A.to_matrix();
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    out.invariant_factors.push_back(s.A(i, i));
  }
  if (s.track) {
    out.U = s.U.to_matrix();
    out.V = s.V.to_matrix();
  }
  if (s.track_inverse) out.U_inverse = s.Uinv.to_matrix();
  return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  auto d = smith_normal_form(m, SmithOptions{false, false});
  std::vector<Integer> out;
  for (auto& f : d.invariant_factors) {
    if (f != 0) out.push_back(f);
  }
  return out;
}

std::size_t rank(const IntMatrix& m) { return smith_invariants(m).size(); }

// ---------------------------------------------------------------------------
// Abelian groups

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank == 1) {
    parts.push_back("Z");
  } else if (free_rank > 1) {
    parts.push_back("Z^" + std::to_string(free_rank));
  }
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

AbelianGroup AbelianGroup::from_moduli(const std::vector<Integer>& moduli) {
  std::vector<Integer> diag;
  AbelianGroup g;
  for (const auto& t : moduli) {
    if (t == 0) {
      ++g.free_rank;
    } else if (abs(t) != 1) {
      diag.push_back(abs(t));
    }
  }
  if (!diag.empty()) {
    std::vector<IntMatrix::Entry> entries;
    for (std::size_t i = 0; i < diag.size(); ++i) entries.push_back({i, i, diag[i]});
    auto factors =
        smith_invariants(IntMatrix::from_triplets(diag.size(), diag.size(), entries));
    for (auto& f : factors) {
      if (f != 1) g.torsion.push_back(f);
    }
  }
  return g;
}

AbelianGroup AbelianGroup::parse(const std::string& text) {
  std::vector<Integer> moduli;
  std::string cleaned;
  for (char ch : text) {
    if (ch != ' ') cleaned += ch;
  }
  if (cleaned == "0" || cleaned.empty()) return {};
  std::size_t pos = 0;
  while (pos <= cleaned.size()) {
    std::size_t next = cleaned.find('+', pos);
    if (next == std::string::npos) next = cleaned.size();
    const std::string part = cleaned.substr(pos, next - pos);
    if (part == "Z") {
      moduli.push_back(0);
    } else if (part.rfind("Z^", 0) == 0) {
      const long k = std::strtol(part.c_str() + 2, nullptr, 10);
      if (k <= 0) throw InputError("bad group term: " + part);
      for (long i = 0; i < k; ++i) moduli.push_back(0);
    } else if (part.rfind("Z/", 0) == 0) {
      Integer t;
      if (t.set_str(part.substr(2), 10) != 0 || t <= 0) {
        throw InputError("bad group term: " + part);
      }
      moduli.push_back(t);
    } else if (part != "0") {
      throw InputError("bad group term: '" + part + "'");
    }
    pos = next + 1;
  }
  return from_moduli(moduli);
}

AbelianGroup cokernel(const IntMatrix& relations) {
  AbelianGroup g;
  const auto factors = smith_invariants(relations);
  g.free_rank = relations.cols() - factors.size();
  for (const auto& f : factors) {
    if (f != 1) g.torsion.push_back(f);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Solving, kernels, images

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve: right-hand side has wrong length");
  }
  return SystemSolver(m).solve(b);
}

SystemSolver::SystemSolver(const IntMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), snf_(smith_normal_form(m)) {}

std::optional<IntVector> SystemSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("SystemSolver: bad length");
  const IntVector c = snf_.U * b;
  IntVector y(cols_);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Integer d = i < snf_.invariant_factors.size() ? snf_.invariant_factors[i]
                                                         : Integer(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      y[i] = c[i] / d;
    }
  }
  return snf_.V * y;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  if (m.rows() * m.cols() > kDenseLimit) return lattice_kernel(m, {});
  const auto snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  std::vector<std::size_t> cols;
  for (std::size_t c = r; c < m.cols(); ++c) cols.push_back(c);
  return snf.V.select_cols(cols);
}

IntMatrix lattice_kernel(const IntMatrix& m, const std::vector<Integer>& row_moduli) {
  if (!row_moduli.empty() && row_moduli.size() != m.rows()) {
    throw std::invalid_argument("lattice_kernel: one modulus per row");
  }
  const std::size_t n = m.cols();
  std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;

  const auto& entries = m.entries();
  std::vector<Integer> v;
  for (std::size_t begin = 0; begin < entries.size();) {
    std::size_t end = begin;
    while (end < entries.size() && entries[end].row == entries[begin].row) ++end;
    const Integer t = row_moduli.empty() ? Integer(0) : row_moduli[entries[begin].row];

    v.assign(basis.size(), Integer(0));
    bool any = false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (std::size_t e = begin; e < end; ++e) v[j] += entries[e].value * basis[j][entries[e].col];
      if (sgn(t) != 0) v[j] %= t;
      any = any || sgn(v[j]) != 0;
    }
    begin = end;
    if (!any) continue;

    // Column operations until a single nonzero entry remains.
    std::size_t pivot = basis.size();
    for (;;) {
      pivot = basis.size();
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (sgn(v[j]) != 0 && (pivot == basis.size() || abs(v[j]) < abs(v[pivot]))) pivot = j;
      }
      bool reduced = true;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == pivot || sgn(v[j]) == 0) continue;
        const Integer q = v[j] / v[pivot];
        v[j] -= q * v[pivot];
        for (std::size_t i = 0; i < n; ++i) {
          if (sgn(basis[pivot][i]) != 0) basis[j][i] -= q * basis[pivot][i];
        }
        if (sgn(v[j]) != 0) reduced = false;
      }
      if (reduced) break;
    }

    if (sgn(t) == 0) {
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(pivot));
    } else {
      Integer g;
      mpz_gcd(g.get_mpz_t(), v[pivot].get_mpz_t(), t.get_mpz_t());
      const Integer scale = abs(t) / g;
      if (scale != 1) {
        for (auto& x : basis[pivot]) x *= scale;
      }
    }
  }

  std::vector<IntMatrix::Entry> out;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(basis[j][i]) != 0) out.push_back({i, j, basis[j][i]});
    }
  }
  std::sort(out.begin(), out.end(), [](const IntMatrix::Entry& a, const IntMatrix::Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return IntMatrix::from_triplets(n, basis.size(), std::move(out));
}

IntMatrix image_basis(const IntMatrix& m) {
  const auto snf = smith_normal_form(m, SmithOptions{true, true});
  const std::size_t r = snf.rank();
  std::vector<IntMatrix::Entry> entries;
  for (const auto& e : snf.U_inverse->entries()) {
    if (e.col < r) entries.push_back({e.row, e.col, e.value * snf.invariant_factors[e.col]});
  }
  return IntMatrix::from_triplets(m.rows(), r, std::move(entries));
}

LatticeSolver::LatticeSolver(const IntMatrix& basis) : ambient_(basis.rows()) {
  auto snf = smith_normal_form(basis);
  const std::size_t r = snf.rank();
  if (r != basis.cols()) {
    throw std::invalid_argument("LatticeSolver: basis is not of full column rank");
  }
  U_ = std::move(snf.U);
  V_ = std::move(snf.V);
  factors_.assign(snf.invariant_factors.begin(), snf.invariant_factors.begin() + r);
}

std::optional<IntVector> LatticeSolver::solve(const IntVector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("LatticeSolver: bad length");
  const IntVector c = U_ * v;
  IntVector y(factors_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < factors_.size()) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), factors_[i].get_mpz_t())) return std::nullopt;
      y[i] = c[i] / factors_[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return V_ * y;
}

DiagonalForm diagonalize(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators) {
    throw std::invalid_argument("diagonalize: relation matrix has wrong height");
  }
  const auto snf = smith_normal_form(relations, SmithOptions{true, true});
  const std::size_t r = snf.rank();
  std::vector<std::size_t> keep;
  DiagonalForm form;
  for (std::size_t i = r; i < generators; ++i) {
    keep.push_back(i);
    form.moduli.push_back(0);
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (snf.invariant_factors[i] != 1) {
      keep.push_back(i);
      form.moduli.push_back(snf.invariant_factors[i]);
    }
  }
  form.to_new = snf.U.select_rows(keep).reduced_rows(form.moduli);
  form.from_new = snf.U_inverse->select_cols(keep);
  return form;
}

IntMatrix relation_matrix(const std::vector<Integer>& moduli) {
  std::vector<IntMatrix::Entry> entries;
  std::size_t col = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] != 0) entries.push_back({i, col++, moduli[i]});
  }
  return IntMatrix::from_triplets(moduli.size(), col, std::move(entries));
}

Subgroup::Subgroup(std::vector<Integer> ambient_moduli, const IntMatrix& spanning)
    : ambient_(std::move(ambient_moduli)) {
  if (spanning.rows() != ambient_.size()) {
    throw std::invalid_argument("Subgroup: spanning set has wrong height");
  }
  const IntMatrix rel = relation_matrix(ambient_);
  basis_ = image_basis(IntMatrix::hstack(spanning, rel));
  solver_ = LatticeSolver(basis_);
  // Relations of the subgroup are the ambient relations in basis coordinates.
  std::vector<IntVector> rel_coords;
  for (std::size_t c = 0; c < rel.cols(); ++c) {
    rel_coords.push_back(*solver_.solve(rel.column(c)));
  }
  form_ = diagonalize(basis_.cols(),
                      IntMatrix::from_columns(basis_.cols(), rel_coords));
  inclusion_ = (basis_ * form_.from_new).reduced_rows(ambient_);
}

std::optional<IntVector> Subgroup::coordinates(const IntVector& v) const {
  auto c = solver_.solve(v);
  if (!c) return std::nullopt;
  return reduced(form_.to_new * *c, form_.moduli);
}

IntMatrix Subgroup::coordinates(const IntMatrix& columns) const {
  std::vector<IntVector> cols;
  cols.reserve(columns.cols());
  std::vector<std::vector<IntMatrix::Entry>> by_col(columns.cols());
  for (const auto& e : columns.entries()) by_col[e.col].push_back(e);
  for (std::size_t c = 0; c < columns.cols(); ++c) {
    IntVector v(columns.rows());
    for (const auto& e : by_col[c]) v[e.row] = e.value;
    auto coords = coordinates(v);
    if (!coords) throw std::domain_error("Subgroup::coordinates: vector outside subgroup");
    cols.push_back(std::move(*coords));
  }
  return IntMatrix::from_columns(size(), cols);
}

Subgroup kernel_subgroup(const std::vector<Integer>& source_moduli,
                         const std::vector<Integer>& target_moduli,
                         const IntMatrix& m) {
  if (m.rows() != target_moduli.size() || m.cols() != source_moduli.size()) {
    throw std::invalid_argument("kernel_subgroup: shape mismatch");
  }
  if (m.rows() * m.cols() > kDenseLimit) return Subgroup(source_moduli, lattice_kernel(m, target_moduli));
  const IntMatrix system = IntMatrix::hstack(m, relation_matrix(target_moduli));
  const IntMatrix k = kernel_basis(system);
  std::vector<std::size_t> top(source_moduli.size());
  std::iota(top.begin(), top.end(), 0);
  return Subgroup(source_moduli, k.select_rows(top));
}

DiagonalForm quotient(const std::vector<Integer>& moduli,
                      const IntMatrix& extra_relations) {
  return diagonalize(moduli.size(),
                     IntMatrix::hstack(relation_matrix(moduli), extra_relations));
}

bool is_surjective(const std::vector<Integer>& target_moduli, const IntMatrix& m) {
  const IntMatrix all = IntMatrix::hstack(m, relation_matrix(target_moduli));
  const auto factors = smith_invariants(all);
  if (factors.size() != target_moduli.size()) return false;
  return std::all_of(factors.begin(), factors.end(),
                     [](const Integer& f) { return f == 1; });
}

bool is_isomorphism(const std::vector<Integer>& source_moduli,
                    const std::vector<Integer>& target_moduli, const IntMatrix& m) {
  if (AbelianGroup::from_moduli(source_moduli) != AbelianGroup::from_moduli(target_moduli)) {
    return false;
  }
  // A surjection between isomorphic finitely generated abelian groups is an
  // isomorphism.
  return is_surjective(target_moduli, m);
}

}  // namespace hocoalg
