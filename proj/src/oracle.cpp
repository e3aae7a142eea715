#include "fncohom/oracle.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#ifdef FNCOHOM_HAVE_OPENMP
#include <omp.h>
#endif

namespace fncohom {

// ---------------------------------------------------------------------------
// Ring models

namespace {

constexpr int kMaxVertices = 25;

std::uint64_t binomial_saturating(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

class UnionFind {
 public:
  explicit UnionFind(int count) {
    for (int v = 0; v < count; ++v) parent_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v);
  }
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[p];
      v = p;
    }
    return v;
  }
  // False if u and v were already connected.
  bool unite(int u, int v) {
    u = find(u);
    v = find(v);
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    parent_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(u);
    return true;
  }

 private:
  std::array<std::uint8_t, 32> parent_{};
};

struct FlatKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  auto operator<=>(const FlatKey&) const = default;
};

// Vertex partition cut out by the edges, as 5-bit component labels.
FlatKey flat_key(UnionFind& uf, int vertices) {
  FlatKey key;
  for (int v = 0; v < vertices; ++v) {
    const auto label = static_cast<std::uint64_t>(uf.find(v));
    const int bit = 5 * v;
    if (bit < 60)
      key.lo |= label << bit;
    else
      key.hi |= label << (bit - 60);
  }
  return key;
}

FlatKey flat_key_of(const RingModel& model, const Monomial& mono) {
  if (!model.graphic) return {};
  UnionFind uf(model.vertex_count);
  mono.for_each([&](GenIndex g) {
    const auto [u, v] = model.endpoints[static_cast<std::size_t>(g)];
    uf.unite(u, v);
  });
  return flat_key(uf, model.vertex_count);
}

std::vector<RelationTerm> arnold(const RingModel& model, Copy copy, int a, int b, int c, bool anti) {
  const GenIndex ab = model.index(copy, a, b);
  const GenIndex ac = model.index(copy, a, c);
  const GenIndex bc = model.index(copy, b, c);
  auto term = [&](GenIndex x, GenIndex y, int coeff) {
    auto p = concatenate(Monomial::of(x), Monomial::of(y), anti);
    return RelationTerm{p->mono, coeff * p->sign};
  };
  return {term(ab, ac, 1), term(ab, bc, -1), term(ac, bc, 1)};
}

}  // namespace

int RingModel::top_step() const {
  switch (space) {
    case Space::Base:
      return m - 1;
    case Space::Total:
      return m + n - 1;
    case Space::Fiber:
      return n;
    case Space::Pair:
      return 2 * n + m - 1;
  }
  return 0;
}

GenIndex RingModel::index(Copy copy, int i, int j) const {
  if (copy == Copy::Primed && j <= m) copy = Copy::Unprimed;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const Generator& x = generators[g];
    if (x.copy == copy && x.i == i && x.j == j) return static_cast<GenIndex>(g);
  }
  return -1;
}

bool RingModel::is_candidate(const Monomial& mono) const {
  std::uint64_t seen[2] = {0, 0};
  bool ok = true;
  mono.for_each([&](GenIndex g) {
    const Generator& x = generators[static_cast<std::size_t>(g)];
    std::uint64_t& w = seen[x.copy == Copy::Unprimed ? 0 : 1];
    const std::uint64_t bit = std::uint64_t{1} << x.j;
    if (w & bit) ok = false;
    w |= bit;
  });
  return ok;
}

std::vector<Monomial> RingModel::candidates(int step) const {
  // Generators sharing (copy, j) are contiguous in the table.
  std::vector<std::pair<GenIndex, GenIndex>> slots;
  for (GenIndex g = 0; g < generator_count(); ++g) {
    const Generator& x = generators[static_cast<std::size_t>(g)];
    if (g > 0) {
      const Generator& p = generators[static_cast<std::size_t>(g - 1)];
      if (p.copy == x.copy && p.j == x.j) {
        slots.back().second = g + 1;
        continue;
      }
    }
    slots.push_back({g, g + 1});
  }
  std::vector<Monomial> out;
  if (step < 0 || step > static_cast<int>(slots.size())) return out;
  auto rec = [&](auto&& self, std::size_t k, int remaining, Monomial acc) -> void {
    if (remaining == 0) {
      out.push_back(acc);
      return;
    }
    if (slots.size() - k < static_cast<std::size_t>(remaining)) return;
    self(self, k + 1, remaining, acc);
    for (GenIndex g = slots[k].first; g < slots[k].second; ++g) self(self, k + 1, remaining - 1, acc.with(g));
  };
  rec(rec, 0, step, Monomial{});
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

bool RingModel::is_forest(const Monomial& mono) const {
  if (!graphic) return false;
  UnionFind uf(vertex_count);
  bool forest = true;
  mono.for_each([&](GenIndex g) {
    const auto [u, v] = endpoints[static_cast<std::size_t>(g)];
    if (!uf.unite(u, v)) forest = false;
  });
  return forest;
}

RingModel ring_model(int m, int n, int d, Space space) {
  if (m < 1 || n < 1) throw ParameterError(fmt::format("need m >= 1 and n >= 1 (got m={}, n={})", m, n));
  if (d < 2) throw ParameterError(fmt::format("dimension d must be >= 2 (got {})", d));
  const int total = m + n;
  RingModel r;
  r.space = space;
  r.m = m;
  r.n = n;
  r.anticommuting = d % 2 == 0;

  auto add_unprimed = [&](int j_from, int j_to) {
    for (int j = std::max(j_from, 2); j <= j_to; ++j)
      for (int i = 1; i < j; ++i) r.generators.push_back({Copy::Unprimed, i, j});
  };
  switch (space) {
    case Space::Base:
      add_unprimed(2, m);
      r.graphic = true;
      r.vertex_count = m;
      break;
    case Space::Total:
      add_unprimed(2, total);
      r.graphic = true;
      r.vertex_count = total;
      break;
    case Space::Fiber:
      add_unprimed(m + 1, total);
      break;
    case Space::Pair:
      add_unprimed(2, total);
      for (int j = m + 1; j <= total; ++j)
        for (int i = 1; i < j; ++i) r.generators.push_back({Copy::Primed, i, j});
      r.graphic = true;
      r.vertex_count = total + n;
      break;
  }
  if (r.generator_count() > AlgebraContext::kMaxGenerators)
    throw ParameterError(fmt::format("ring has {} generators; at most {} are supported", r.generator_count(),
                                     AlgebraContext::kMaxGenerators));
  if (r.graphic && r.vertex_count > kMaxVertices) r.graphic = false;

  if (r.graphic) {
    // Primed vertex k' (k > m) sits after the unprimed ones; k' = k for k <= m.
    auto vertex = [&](Copy copy, int k) { return copy == Copy::Primed && k > m ? total + (k - m - 1) : k - 1; };
    for (const Generator& g : r.generators) r.endpoints.push_back({vertex(g.copy, g.i), vertex(g.copy, g.j)});
  }

  const bool anti = r.anticommuting;
  switch (space) {
    case Space::Base:
    case Space::Total: {
      const int top = space == Space::Base ? m : total;
      for (int c = 3; c <= top; ++c)
        for (int b = 2; b < c; ++b)
          for (int a = 1; a < b; ++a) r.relations.push_back(arnold(r, Copy::Unprimed, a, b, c, anti));
      break;
    }
    case Space::Fiber:
      for (int c = m + 1; c <= total; ++c)
        for (int b = 2; b < c; ++b)
          for (int a = 1; a < b; ++a) {
            if (b > m) {
              r.relations.push_back(arnold(r, Copy::Unprimed, a, b, c, anti));
            } else {
              auto p = concatenate(Monomial::of(r.index(Copy::Unprimed, a, c)),
                                   Monomial::of(r.index(Copy::Unprimed, b, c)), anti);
              r.relations.push_back({RelationTerm{p->mono, p->sign}});
            }
          }
      break;
    case Space::Pair:
      for (int c = 3; c <= total; ++c)
        for (int b = 2; b < c; ++b)
          for (int a = 1; a < b; ++a) {
            r.relations.push_back(arnold(r, Copy::Unprimed, a, b, c, anti));
            if (c > m) r.relations.push_back(arnold(r, Copy::Primed, a, b, c, anti));
          }
      break;
  }
  return r;
}

std::string to_string(SpanningMode mode) {
  switch (mode) {
    case SpanningMode::Auto:
      return "auto";
    case SpanningMode::Full:
      return "full";
    case SpanningMode::Forest:
      return "forest";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Literal slice

namespace {

template <class F>
void for_each_subset(int g, int size, F&& f) {
  auto rec = [&](auto&& self, int next, int remaining, Monomial acc) -> void {
    if (remaining == 0) {
      f(acc);
      return;
    }
    for (int x = next; x <= g - remaining; ++x) self(self, x + 1, remaining - 1, acc.with(x));
  };
  rec(rec, 0, size, Monomial{});
}

std::ptrdiff_t find_column(const std::vector<Monomial>& cols, const Monomial& mono) {
  auto it = std::lower_bound(cols.begin(), cols.end(), mono);
  if (it == cols.end() || *it != mono) return -1;
  return it - cols.begin();
}

}  // namespace

DegreeSlice degree_slice(const RingModel& model, int step, std::uint64_t cap) {
  if (step < 0) throw ParameterError("degree step must be nonnegative");
  const int g = model.generator_count();
  const std::uint64_t count = binomial_saturating(g, step);
  if (count > cap)
    throw SizeCapExceeded(fmt::format("degree step {} has {} squarefree monomials; cap is {}", step, count, cap));

  DegreeSlice slice;
  slice.degree_step = step;
  for_each_subset(g, step, [&](const Monomial& mono) { slice.spanning_monomials.push_back(mono); });
  std::sort(slice.spanning_monomials.begin(), slice.spanning_monomials.end());

  for (const auto& rel : model.relations) {
    const int width = rel.front().mono.size();
    if (step < width) continue;
    for_each_subset(g, step - width, [&](const Monomial& mu) {
      SparseRow row;
      for (const RelationTerm& t : rel) {
        auto p = concatenate(t.mono, mu, model.anticommuting);
        if (!p) continue;
        const auto col = find_column(slice.spanning_monomials, p->mono);
        row.push_back({static_cast<int>(col), mpz_class(t.sign * p->sign)});
      }
      if (!row.empty()) slice.relation_rows.push_back(std::move(row));
    });
  }
  // Canonical order for presentation: by size, then numerically; all sizes
  // agree here, so the numeric sort above already is canonical.
  return slice;
}

// ---------------------------------------------------------------------------
// Block elimination

struct BlockSolution {
  std::vector<Monomial> columns;
  std::uint64_t rows = 0;
  std::uint64_t rank = 0;
  std::uint64_t dimension = 0;
  std::vector<mpz_class> torsion;
  std::uint64_t candidates = 0;
  bool basis_match = false;

  // Retained only for projection.
  std::vector<std::int32_t> std_index;  // per column, -1 for pivot columns
  std::vector<Monomial> std_monomials;
  std::vector<std::uint64_t> nf_offset;
  std::vector<std::uint32_t> nf_idx;
  std::vector<std::int64_t> nf_val;
  bool residual_free = true;
  bool std_is_candidates = false;
  std::vector<Monomial> candidate_monomials;
};

struct BlockTable {
  SpanningMode mode = SpanningMode::Full;
  std::map<FlatKey, BlockSolution> blocks;
};

namespace {

// Relation terms indexed by their (two-factor) monomial.
class TermIndex {
 public:
  explicit TermIndex(const RingModel& model) : g_(model.generator_count()) {
    table_.resize(static_cast<std::size_t>(g_) * static_cast<std::size_t>(g_));
    for (std::size_t r = 0; r < model.relations.size(); ++r)
      for (std::size_t t = 0; t < model.relations[r].size(); ++t) {
        const Monomial& mono = model.relations[r][t].mono;
        if (mono.size() != 2) throw std::logic_error("relation terms must have two factors");
        const auto f = mono.factors();
        table_[slot(f[0], f[1])].push_back({static_cast<int>(r), static_cast<int>(t)});
      }
  }
  const std::vector<std::pair<int, int>>& at(GenIndex x, GenIndex y) const { return table_[slot(x, y)]; }

 private:
  std::size_t slot(GenIndex x, GenIndex y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(g_) + static_cast<std::size_t>(y);
  }
  int g_;
  std::vector<std::vector<std::pair<int, int>>> table_;
};

struct Columns {
  SpanningMode mode = SpanningMode::Full;
  std::map<FlatKey, std::vector<Monomial>> blocks;
  std::uint64_t total = 0;
};

Columns collect_columns(const RingModel& model, int step, const OracleOptions& options) {
  const int g = model.generator_count();
  const std::uint64_t full = binomial_saturating(g, step);
  Columns out;
  switch (options.spanning) {
    case SpanningMode::Full:
      if (full > options.size_cap)
        throw SizeCapExceeded(
            fmt::format("degree step {} spans {} squarefree monomials; cap is {}", step, full, options.size_cap));
      out.mode = SpanningMode::Full;
      break;
    case SpanningMode::Forest:
      if (!model.graphic) throw ParameterError("forest spanning needs a graphic presentation (not the fiber ring)");
      out.mode = SpanningMode::Forest;
      break;
    case SpanningMode::Auto:
      if (full <= options.size_cap)
        out.mode = SpanningMode::Full;
      else if (model.graphic)
        out.mode = SpanningMode::Forest;
      else
        throw SizeCapExceeded(
            fmt::format("degree step {} spans {} squarefree monomials; cap is {}", step, full, options.size_cap));
      break;
  }

  if (out.mode == SpanningMode::Full) {
    for_each_subset(g, step, [&](const Monomial& mono) {
      out.blocks[flat_key_of(model, mono)].push_back(mono);
      ++out.total;
    });
  } else {
    auto rec = [&](auto&& self, int next, int remaining, Monomial acc, UnionFind uf) -> void {
      if (remaining == 0) {
        if (++out.total > options.forest_cap)
          throw SizeCapExceeded(
              fmt::format("degree step {} has more than {} forest monomials", step, options.forest_cap));
        out.blocks[flat_key(uf, model.vertex_count)].push_back(acc);
        return;
      }
      for (int x = next; x <= g - remaining; ++x) {
        UnionFind next_uf = uf;
        const auto [u, v] = model.endpoints[static_cast<std::size_t>(x)];
        if (!next_uf.unite(u, v)) continue;
        self(self, x + 1, remaining - 1, acc.with(x), next_uf);
      }
    };
    rec(rec, 0, step, Monomial{}, UnionFind(model.vertex_count));
  }
  for (auto& [key, cols] : out.blocks) std::sort(cols.begin(), cols.end());
  return out;
}

class NfAccumulator {
 public:
  explicit NfAccumulator(std::size_t size) : acc_(size, 0) {}

  void add(const BlockSolution& b, std::size_t col, int sign) {
    for (std::uint64_t k = b.nf_offset[col]; k < b.nf_offset[col + 1]; ++k) {
      const std::uint32_t i = b.nf_idx[k];
      std::int64_t& slot = acc_[i];
      if (slot == 0) touched_.push_back(i);
      std::int64_t delta = b.nf_val[k];
      if (sign < 0 && __builtin_sub_overflow(std::int64_t{0}, delta, &delta))
        throw OracleInconsistency("normal-form coefficient overflow");
      if (__builtin_add_overflow(slot, delta, &slot)) throw OracleInconsistency("normal-form coefficient overflow");
    }
  }

  // Emits the nonzero entries sorted by index and clears the accumulator.
  template <class F>
  void drain(F&& emit) {
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    for (std::uint32_t i : touched_) {
      if (acc_[i] != 0) emit(i, acc_[i]);
      acc_[i] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<std::int64_t> acc_;
  std::vector<std::uint32_t> touched_;
};

struct RowEntry {
  std::size_t col;
  int sign;
};

BlockSolution solve_block(const RingModel& model, const TermIndex& terms, SpanningMode mode,
                          std::vector<Monomial> columns, bool use_pivots, bool retain) {
  BlockSolution b;
  b.columns = std::move(columns);
  const auto& cols = b.columns;
  const std::size_t ncols = cols.size();
  const bool anti = model.anticommuting;

  b.std_index.assign(ncols, -1);
  b.nf_offset.reserve(ncols + 1);
  b.nf_offset.push_back(0);
  NfAccumulator acc(ncols);
  std::vector<SparseRow> residuals;
  std::uint32_t nstd = 0;

  std::vector<GenIndex> f;
  std::array<RowEntry, 3> row{};
  for (std::size_t c = 0; c < ncols; ++c) {
    const Monomial& mono = cols[c];
    f = mono.factors();
    bool pivoted = false;
    for (std::size_t x = 0; x < f.size(); ++x)
      for (std::size_t y = x + 1; y < f.size(); ++y) {
        const Monomial mu = mono.without(f[x]).without(f[y]);
        for (const auto& [r, t] : terms.at(f[x], f[y])) {
          const auto& rel = model.relations[static_cast<std::size_t>(r)];
          std::size_t len = 0;
          bool owned = true;
          for (std::size_t u = 0; u < rel.size() && owned; ++u) {
            auto p = concatenate(rel[u].mono, mu, anti);
            if (!p) continue;
            std::size_t idx = c;
            if (static_cast<int>(u) != t) {
              const auto found = find_column(cols, p->mono);
              if (found < 0) {
                if (mode == SpanningMode::Forest && !model.is_forest(p->mono)) continue;
                throw OracleInconsistency("relation row is not homogeneous for the flat grading");
              }
              idx = static_cast<std::size_t>(found);
              // Rows are owned by their largest column.
              if (idx > c) owned = false;
            }
            row[len++] = {idx, rel[u].sign * p->sign};
          }
          if (!owned) continue;
          ++b.rows;

          if (!use_pivots) {
            SparseRow sparse;
            for (std::size_t k = 0; k < len; ++k) sparse.push_back({static_cast<int>(row[k].col), row[k].sign});
            residuals.push_back(std::move(sparse));
            continue;
          }
          if (!pivoted) {
            // Unit lead: col c = -lead_sign * (rest of row).
            int lead_sign = 0;
            for (std::size_t k = 0; k < len; ++k)
              if (row[k].col == c) lead_sign = row[k].sign;
            for (std::size_t k = 0; k < len; ++k)
              if (row[k].col != c) acc.add(b, row[k].col, -lead_sign * row[k].sign);
            acc.drain([&](std::uint32_t i, std::int64_t v) {
              b.nf_idx.push_back(i);
              b.nf_val.push_back(v);
            });
            b.nf_offset.push_back(b.nf_idx.size());
            pivoted = true;
            continue;
          }
          for (std::size_t k = 0; k < len; ++k) acc.add(b, row[k].col, row[k].sign);
          SparseRow residual;
          acc.drain([&](std::uint32_t i, std::int64_t v) { residual.push_back({static_cast<int>(i), mpz_class(v)}); });
          if (!residual.empty()) residuals.push_back(std::move(residual));
        }
      }
    if (!pivoted) {
      b.std_index[c] = static_cast<std::int32_t>(nstd);
      b.nf_idx.push_back(nstd++);
      b.nf_val.push_back(1);
      b.nf_offset.push_back(b.nf_idx.size());
    }
  }

  // Residual relations among standard columns: exact lattice on the columns
  // they actually touch.
  LatticeSummary lattice;
  if (!residuals.empty()) {
    std::vector<int> used;
    for (const auto& r : residuals)
      for (const auto& [i, v] : r) used.push_back(i);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<SparseRow> compact = residuals;
    for (auto& r : compact)
      for (auto& [i, v] : r) i = static_cast<int>(std::lower_bound(used.begin(), used.end(), i) - used.begin());
    lattice = smith_summary(compact, static_cast<int>(used.size()));
  }
  b.rank = (ncols - nstd) + static_cast<std::uint64_t>(lattice.rank);
  b.dimension = nstd - static_cast<std::uint64_t>(lattice.rank);
  for (const auto& d : lattice.invariant_factors)
    if (d != 1) b.torsion.push_back(d);
  b.residual_free = residuals.empty();

  // Candidate basis inside this block.
  std::vector<std::size_t> cand;
  for (std::size_t c = 0; c < ncols; ++c)
    if (model.is_candidate(cols[c])) cand.push_back(c);
  b.candidates = cand.size();
  bool all_std = cand.size() == nstd;
  for (std::size_t c : cand) all_std = all_std && b.std_index[c] >= 0;
  b.std_is_candidates = all_std && b.residual_free;
  if (b.std_is_candidates) {
    b.basis_match = true;
  } else if (cand.size() == b.dimension) {
    // Independence modulo the residual lattice, over Q.
    std::vector<SparseRow> stack = residuals;
    const int base_rank = lattice.rank;
    for (std::size_t c : cand) {
      SparseRow r;
      for (std::uint64_t k = b.nf_offset[c]; k < b.nf_offset[c + 1]; ++k)
        r.push_back({static_cast<int>(b.nf_idx[k]), mpz_class(b.nf_val[k])});
      stack.push_back(std::move(r));
    }
    b.basis_match = rational_rank(stack, static_cast<int>(nstd)) - base_rank == static_cast<int>(cand.size());
  }

  if (retain) {
    for (std::size_t c = 0; c < ncols; ++c)
      if (b.std_index[c] >= 0) b.std_monomials.push_back(cols[c]);
    for (std::size_t c : cand) b.candidate_monomials.push_back(cols[c]);
  } else {
    b.columns = {};
    b.std_index = {};
    b.nf_offset = {};
    b.nf_idx = {};
    b.nf_val = {};
  }
  return b;
}

BlockTable solve_degree(const RingModel& model, int step, const OracleOptions& options, bool retain) {
  Columns columns = collect_columns(model, step, options);
  const TermIndex terms(model);

  std::vector<FlatKey> keys;
  std::vector<std::vector<Monomial>> work;
  for (auto& [key, cols] : columns.blocks) {
    keys.push_back(key);
    work.push_back(std::move(cols));
  }
  std::vector<BlockSolution> solved(work.size());
  std::vector<std::exception_ptr> errors(work.size());
  const long count = static_cast<long>(work.size());

  if (options.policy == ExecPolicy::Parallel) {
#ifdef FNCOHOM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long k = 0; k < count; ++k) {
      try {
        solved[static_cast<std::size_t>(k)] = solve_block(model, terms, columns.mode,
                                                          std::move(work[static_cast<std::size_t>(k)]),
                                                          options.use_pivots, retain);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  } else {
    for (long k = 0; k < count; ++k)
      solved[static_cast<std::size_t>(k)] = solve_block(model, terms, columns.mode,
                                                        std::move(work[static_cast<std::size_t>(k)]),
                                                        options.use_pivots, retain);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  BlockTable table;
  table.mode = columns.mode;
  for (std::size_t k = 0; k < keys.size(); ++k) table.blocks.emplace(keys[k], std::move(solved[k]));
  return table;
}

DegreeReport summarize(const RingModel& model, int step, const BlockTable& table, std::uint64_t spanning) {
  DegreeReport rep;
  rep.step = step;
  rep.mode = table.mode;
  rep.spanning = spanning;
  rep.blocks = table.blocks.size();
  bool match = true;
  std::uint64_t found = 0;
  for (const auto& [key, b] : table.blocks) {
    rep.rows += b.rows;
    rep.rank += b.rank;
    rep.dimension += b.dimension;
    rep.torsion.insert(rep.torsion.end(), b.torsion.begin(), b.torsion.end());
    found += b.candidates;
    match = match && b.basis_match;
  }
  // Candidates missing from the columns (never the case for a valid basis)
  // are zero in the quotient, so they break the match.
  rep.candidates = model.candidates(step).size();
  rep.basis_match = match && found == rep.candidates && rep.candidates == rep.dimension;
  return rep;
}

Space space_of(const AlgebraContext& ctx) { return ctx.mode() == RingMode::TwoCopy ? Space::Pair : Space::Total; }

}  // namespace

// ---------------------------------------------------------------------------
// Reports

std::vector<std::uint64_t> OracleReport::dimensions() const {
  std::vector<std::uint64_t> out;
  for (const auto& d : degrees) out.push_back(d.dimension);
  return out;
}

bool OracleReport::torsion_free() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeReport& d) { return d.torsion.empty(); });
}

bool OracleReport::basis_match() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeReport& d) { return d.basis_match; });
}

int OracleReport::top_step() const {
  int top = -1;
  for (const auto& d : degrees)
    if (d.dimension != 0) top = d.step;
  return top;
}

HomologyOracle::HomologyOracle(OracleOptions options) : options_(options) {}
HomologyOracle::~HomologyOracle() = default;

DegreeReport HomologyOracle::degree(int m, int n, int d, Space space, int step) {
  if (step < 0) throw ParameterError("degree step must be nonnegative");
  const Key key{m, n, d % 2, static_cast<int>(space), step};
  {
    std::lock_guard lock(mutex_);
    if (auto it = reports_.find(key); it != reports_.end()) return it->second;
  }
  const RingModel model = ring_model(m, n, d, space);
  const BlockTable table = solve_degree(model, step, options_, false);
  std::uint64_t spanning = 0;
  for (const auto& [k, b] : table.blocks) spanning += b.rank + b.dimension;
  DegreeReport rep = summarize(model, step, table, spanning);
  std::lock_guard lock(mutex_);
  reports_.emplace(key, rep);
  return rep;
}

OracleReport HomologyOracle::report(int m, int n, int d, Space space, int max_step) {
  if (max_step < 0) throw ParameterError("max step must be nonnegative");
  OracleReport rep;
  rep.space = space;
  rep.m = m;
  rep.n = n;
  rep.d = d;
  for (int s = 0; s <= max_step; ++s) rep.degrees.push_back(degree(m, n, d, space, s));
  return rep;
}

std::shared_ptr<const BlockTable> HomologyOracle::table(const RingModel& model, int step) {
  const Key key{model.m, model.n, model.anticommuting ? 0 : 1, static_cast<int>(model.space), step};
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  auto t = std::make_shared<const BlockTable>(solve_degree(model, step, options_, true));
  std::lock_guard lock(mutex_);
  return tables_.emplace(key, std::move(t)).first->second;
}

Element HomologyOracle::project(const AlgebraContext& ctx, const Element& e) {
  require_context(ctx, e);
  if (e.is_zero()) return e;
  const auto step = e.homogeneous_step();
  if (!step) throw ParameterError("oracle projection needs a homogeneous element");
  const RingModel model = ring_model(ctx.m(), ctx.n(), ctx.d(), space_of(ctx));
  if (model.generators != ctx.generators()) throw std::logic_error("oracle and context generator tables differ");
  const auto tab = table(model, *step);

  // Right-hand side per block, over standard columns.
  std::map<FlatKey, std::map<std::uint32_t, mpz_class>> rhs;
  for (const Term& t : e.terms()) {
    const FlatKey key = flat_key_of(model, t.mono);
    auto it = tab->blocks.find(key);
    std::ptrdiff_t col = -1;
    if (it != tab->blocks.end()) col = find_column(it->second.columns, t.mono);
    if (col < 0) {
      if (tab->mode == SpanningMode::Forest && !model.is_forest(t.mono)) continue;  // lies in the ideal
      throw OracleInconsistency("monomial missing from the oracle's spanning set");
    }
    const BlockSolution& b = it->second;
    auto& y = rhs[key];
    for (std::uint64_t k = b.nf_offset[static_cast<std::size_t>(col)];
         k < b.nf_offset[static_cast<std::size_t>(col) + 1]; ++k)
      y[b.nf_idx[k]] += t.coeff * b.nf_val[k];
  }

  TermAccumulator out;
  for (auto& [key, y] : rhs) {
    const BlockSolution& b = tab->blocks.at(key);
    if (b.std_is_candidates) {
      for (const auto& [i, v] : y) out.add(b.std_monomials[i], v);
      continue;
    }
    if (!b.residual_free || !b.basis_match)
      throw OracleInconsistency("candidate basis is not a basis of this block; projection undefined");
    std::vector<SparseRow> colvecs;
    for (const Monomial& cm : b.candidate_monomials) {
      const auto c = static_cast<std::size_t>(find_column(b.columns, cm));
      SparseRow v;
      for (std::uint64_t k = b.nf_offset[c]; k < b.nf_offset[c + 1]; ++k)
        v.push_back({static_cast<int>(b.nf_idx[k]), mpz_class(b.nf_val[k])});
      colvecs.push_back(std::move(v));
    }
    SparseRow target;
    for (const auto& [i, v] : y)
      if (v != 0) target.push_back({static_cast<int>(i), v});
    const auto x = solve_rational(colvecs, target, static_cast<int>(b.std_monomials.size()));
    if (!x) throw OracleInconsistency("element is not in the span of the candidate basis");
    for (std::size_t k = 0; k < x->size(); ++k) {
      const mpq_class& q = (*x)[k];
      if (q.get_den() != 1) throw OracleInconsistency("non-integral coordinates in the candidate basis");
      out.add(b.candidate_monomials[k], q.get_num());
    }
  }
  return std::move(out).finish(ctx);
}

OracleReport oracle_dimensions(const AlgebraContext& ctx, int max_step, const OracleOptions& options) {
  return oracle_dimensions(ctx.m(), ctx.n(), ctx.d(), space_of(ctx), max_step, options);
}

OracleReport oracle_dimensions(int m, int n, int d, Space space, int max_step, const OracleOptions& options) {
  HomologyOracle oracle(options);
  return oracle.report(m, n, d, space, max_step);
}

Element oracle_project(const AlgebraContext& ctx, const Element& e, const OracleOptions& options) {
  HomologyOracle oracle(options);
  return oracle.project(ctx, e);
}

BasisVerification verify_basis(const AlgebraContext& ctx, int max_step, const OracleOptions& options) {
  BasisVerification v;
  v.report = oracle_dimensions(ctx, max_step, options);
  v.ok = v.report.basis_match();
  return v;
}

}  // namespace fncohom
