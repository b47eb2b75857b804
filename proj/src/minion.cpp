#include "homlab/minion.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "homlab/error.hpp"

namespace homlab {

Polymorphism::Polymorphism(const Digraph& source, const Digraph& target, std::size_t arity)
    : source_(&source), target_(&target), arity_(arity) {
  if (arity == 0) fail(ErrorCode::invalid_parameter, "polymorphism arity must be positive");
}

Polymorphism Polymorphism::from_table(const Digraph& source, const Digraph& target,
                                      std::size_t arity, std::vector<Vertex> table) {
  Polymorphism f(source, target, arity);
  const auto size = checked_power(source.vertex_count(), arity, caps::kTableSize);
  if (!size) fail(ErrorCode::size_limit, "polymorphism table exceeds the table cap");
  if (table.size() != *size) fail(ErrorCode::invalid_input, "polymorphism table has the wrong length");
  const Digraph power = tensor_power(source, arity);
  if (!is_hom(power, target, table)) {
    fail(ErrorCode::corrupt_polymorphism, "table does not preserve arcs of the tensor power");
  }
  f.table_ = std::make_shared<const std::vector<Vertex>>(std::move(table));
  return f;
}

Polymorphism Polymorphism::trusted_table(const Digraph& source, const Digraph& target,
                                         std::size_t arity, std::vector<Vertex> table) {
  Polymorphism f(source, target, arity);
  f.table_ = std::make_shared<const std::vector<Vertex>>(std::move(table));
  return f;
}

Polymorphism Polymorphism::from_rule(const Digraph& source, const Digraph& target,
                                     std::size_t arity, Rule rule, std::uint64_t seed,
                                     std::size_t samples) {
  Polymorphism f(source, target, arity);
  f.rule_ = std::move(rule);
  if (source.arc_count() == 0) return f;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, source.arc_count() - 1);
  std::vector<Vertex> tails(arity), heads(arity);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < arity; ++i) {
      const Arc a = source.arcs()[pick(rng)];
      tails[i] = a.tail;
      heads[i] = a.head;
    }
    const Vertex u = f(tails);
    const Vertex v = f(heads);
    if (u >= target.vertex_count() || v >= target.vertex_count() || !target.has_arc(u, v)) {
      fail(ErrorCode::corrupt_polymorphism, "rule maps an arc of the tensor power to a non-arc");
    }
  }
  return f;
}

Polymorphism Polymorphism::projection(const Digraph& graph, std::size_t arity, std::size_t i) {
  if (i >= arity) fail(ErrorCode::invalid_parameter, "projection coordinate out of range");
  Polymorphism f(graph, graph, arity);
  f.rule_ = [i](std::span<const Vertex> x) { return x[i]; };
  return f;
}

Vertex Polymorphism::operator()(std::span<const Vertex> x) const {
  if (table_) return (*table_)[tuple_index(x, source_->vertex_count())];
  return rule_(x);
}

Vertex Polymorphism::at_index(std::uint64_t index) const {
  if (table_) return (*table_)[index];
  const auto x = tuple_at(index, source_->vertex_count(), arity_);
  return rule_(x);
}

const std::vector<Vertex>& Polymorphism::table() const {
  if (!table_) fail(ErrorCode::unsupported_representation, "polymorphism has no table");
  return *table_;
}

Polymorphism Polymorphism::materialized(std::uint64_t cap) const {
  if (table_) return *this;
  const auto size = checked_power(source_->vertex_count(), arity_, cap);
  if (!size) fail(ErrorCode::size_limit, "polymorphism table exceeds cap " + std::to_string(cap));
  std::vector<Vertex> table(*size);
  std::vector<Vertex> x(arity_, 0);
  const Vertex base = static_cast<Vertex>(source_->vertex_count());
  for (std::uint64_t index = 0; index < *size; ++index) {
    table[index] = rule_(x);
    for (std::size_t i = arity_; i-- > 0;) {
      if (++x[i] < base) break;
      x[i] = 0;
    }
  }
  Polymorphism f(*source_, *target_, arity_);
  f.table_ = std::make_shared<const std::vector<Vertex>>(std::move(table));
  return f;
}

bool operator==(const Polymorphism& a, const Polymorphism& b) {
  if (a.arity() != b.arity() || !(a.source() == b.source()) || !(a.target() == b.target()))
    return false;
  const Polymorphism ta = a.materialized();
  const Polymorphism tb = b.materialized();
  return ta.table() == tb.table();
}

PolymorphismEnumerator::PolymorphismEnumerator(const Digraph& source, const Digraph& target,
                                               std::size_t arity, std::uint64_t cap)
    : source_(&source), target_(&target), arity_(arity) {
  if (arity == 0) fail(ErrorCode::invalid_parameter, "polymorphism arity must be positive");
  power_ = std::make_unique<Digraph>(tensor_power(source, arity, cap));
  search_ = std::make_unique<HomEnumerator>(*power_, target);
}

std::optional<Polymorphism> PolymorphismEnumerator::next() {
  auto h = search_->next();
  if (!h) return std::nullopt;
  // The search only yields homomorphisms, so the table needs no re-check.
  return Polymorphism::trusted_table(*source_, *target_, arity_, std::move(*h));
}

std::vector<Polymorphism> enumerate_polymorphisms(const Digraph& source, const Digraph& target,
                                                  std::size_t arity, std::uint64_t count_cap) {
  PolymorphismEnumerator it(source, target, arity);
  std::vector<Polymorphism> out;
  while (auto f = it.next()) {
    if (out.size() >= count_cap) {
      fail(ErrorCode::size_limit, "more than " + std::to_string(count_cap) + " polymorphisms");
    }
    out.push_back(std::move(*f));
  }
  return out;
}

std::optional<Polymorphism> sample_polymorphism(const Digraph& source, const Digraph& target,
                                                std::size_t arity, std::uint64_t seed) {
  if (arity == 0) fail(ErrorCode::invalid_parameter, "polymorphism arity must be positive");
  const Digraph power = tensor_power(source, arity);
  auto h = sample_hom(power, target, seed);
  if (!h) return std::nullopt;
  return Polymorphism::from_table(source, target, arity, std::move(*h));
}

namespace {

void check_minor_map(const MinorMap& pi, std::size_t from_arity, std::size_t to_arity) {
  if (pi.size() != from_arity) {
    fail(ErrorCode::invalid_parameter, "minor map must have one entry per coordinate");
  }
  if (to_arity == 0) fail(ErrorCode::invalid_parameter, "minor arity must be positive");
  for (std::size_t j : pi)
    if (j >= to_arity) fail(ErrorCode::invalid_parameter, "minor map entry out of range");
}

}  // namespace

Polymorphism minor(const Polymorphism& f, const MinorMap& pi, std::size_t arity) {
  check_minor_map(pi, f.arity(), arity);
  Polymorphism g = Polymorphism::from_rule(
      f.source(), f.target(), arity,
      [f, pi](std::span<const Vertex> x) {
        std::vector<Vertex> y(pi.size());
        for (std::size_t i = 0; i < pi.size(); ++i) y[i] = x[pi[i]];
        return f(y);
      },
      0, 0);
  if (f.has_table() && checked_power(f.source().vertex_count(), arity, caps::kTableSize)) {
    return g.materialized();
  }
  return g;
}

MinorMap compose(const MinorMap& pi, const MinorMap& rho) {
  MinorMap out(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] >= rho.size()) fail(ErrorCode::invalid_parameter, "minor maps do not compose");
    out[i] = rho[pi[i]];
  }
  return out;
}

std::vector<std::size_t> essential_coords(const Polymorphism& f) {
  const auto& table = f.table();
  const std::uint64_t base = f.source().vertex_count();
  const std::size_t n = f.arity();
  std::vector<std::size_t> out;
  // Stride of coordinate i in the lexicographic layout is base^(n-1-i).
  std::uint64_t stride = 1;
  std::vector<std::uint64_t> strides(n);
  for (std::size_t i = n; i-- > 0;) {
    strides[i] = stride;
    stride *= base;
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool essential = false;
    for (std::uint64_t index = 0; index < table.size() && !essential; ++index) {
      if ((index / strides[i]) % base != 0) continue;
      for (std::uint64_t a = 1; a < base; ++a) {
        if (table[index + a * strides[i]] != table[index]) {
          essential = true;
          break;
        }
      }
    }
    if (essential) out.push_back(i);
  }
  return out;
}

bool z_leq_n_member(const LinearFn& f, long long n) {
  long long sum = 0;
  long long norm = 0;
  for (long long c : f.c) {
    sum += c;
    norm += c < 0 ? -c : c;
  }
  return sum % 2 != 0 && norm <= n;
}

LinearFn linear_minor(const LinearFn& f, const MinorMap& pi, std::size_t arity) {
  check_minor_map(pi, f.c.size(), arity);
  LinearFn out{std::vector<long long>(arity, 0)};
  for (std::size_t i = 0; i < pi.size(); ++i) out.c[pi[i]] += f.c[i];
  return out;
}

bool h_loop_check(const Digraph& pattern, const Polymorphism& f, std::uint64_t cap) {
  const auto& arcs = pattern.arcs();
  if (f.arity() != arcs.size()) {
    fail(ErrorCode::invalid_parameter, "arity must equal the number of arcs of the pattern");
  }
  const std::size_t vars = pattern.vertex_count();
  const auto count = checked_power(f.source().vertex_count(), vars, cap);
  if (!count) fail(ErrorCode::size_limit, "h-loop comparison exceeds cap");
  const Vertex base = static_cast<Vertex>(f.source().vertex_count());
  std::vector<Vertex> x(vars, 0), tails(arcs.size()), heads(arcs.size());
  for (std::uint64_t index = 0; index < *count; ++index) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      tails[i] = x[arcs[i].tail];
      heads[i] = x[arcs[i].head];
    }
    if (f(tails) != f(heads)) return false;
    for (std::size_t i = vars; i-- > 0;) {
      if (++x[i] < base) break;
      x[i] = 0;
    }
  }
  return true;
}

Polymorphism all_ones_spike(const Digraph& cycle, const Digraph& k3, std::size_t arity) {
  if (!(k3 == make_clique(3))) fail(ErrorCode::invalid_parameter, "target must be K3");
  const std::size_t k = cycle.vertex_count();
  if (k < 5 || k % 2 == 0 || !(cycle == make_cycle(k))) {
    fail(ErrorCode::invalid_parameter, "source must be an odd cycle of length at least 5");
  }
  std::vector<Domain> domains(k, Domain(3));
  for (auto& d : domains) d.set();
  const Vertex pinned[3] = {0, 1, 0};
  for (Vertex v = 0; v < 3; ++v) {
    domains[v].reset();
    domains[v].set(pinned[v]);
  }
  const auto h = find_least_hom(cycle, k3, domains);
  if (!h) fail(ErrorCode::internal_consistency, "no coloring with the pinned prefix");
  return Polymorphism::from_rule(cycle, k3, arity, [h = *h](std::span<const Vertex> x) {
    const bool all_ones = std::all_of(x.begin(), x.end(), [](Vertex v) { return v == 1; });
    return all_ones ? Vertex{2} : h[x[0]];
  });
}

std::vector<MinorMap> all_minor_maps(std::size_t m, std::size_t n) {
  std::vector<MinorMap> out;
  if (n == 0) return out;
  MinorMap pi(m, 0);
  while (true) {
    out.push_back(pi);
    std::size_t i = m;
    while (i > 0 && ++pi[i - 1] == n) pi[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace homlab
