#include "ehlich/design.hpp"

#include <algorithm>
#include <stdexcept>

namespace ehlich {

std::string to_string(TypeTag t) {
  switch (t) {
    case TypeTag::pure:
      return "pure";
    case TypeTag::type1:
      return "type1";
    case TypeTag::type2:
      return "type2";
  }
  return "unknown";
}

int Design::group_count() const {
  int s = 0;
  for (int g : group_of) s = std::max(s, g);
  return s;
}

std::vector<int> Design::group_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(group_count()) + 1, 0);
  for (int g : group_of) ++sizes[static_cast<std::size_t>(g)];
  return sizes;
}

Matrix<long> Design::gram() const {
  const auto p = columns.size();
  Matrix<long> g(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a; b < p; ++b) g(a, b) = g(b, a) = inner_product(columns[a], columns[b]);
  return g;
}

Design design_from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty design");
  Design d;
  d.n = static_cast<int>(rows.size());
  if (d.n > 31) throw std::invalid_argument("at most 31 runs are supported");
  const std::size_t p = rows.front().size();
  d.columns.assign(p, SignColumn{0, d.n});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p) throw std::invalid_argument("ragged design rows");
    for (std::size_t j = 0; j < p; ++j) {
      const int x = rows[i][j];
      if (x != 1 && x != -1) throw std::invalid_argument("design entries must be +1 or -1");
      if (x == 1) d.columns[j].bits |= std::uint32_t{1} << i;
    }
  }
  if (d.columns[0] != SignColumn::ones(d.n)) throw std::invalid_argument("column 0 must be the all-ones intercept");
  const auto form = check_ehlich_form(d);
  if (const auto* ok = std::get_if<EhlichForm>(&form)) {
    d.group_of = ok->group_of;
    d.type = ok->type;
  } else {
    d.group_of.resize(p);
    for (std::size_t j = 0; j < p; ++j) d.group_of[j] = static_cast<int>(j) + 1;
  }
  return d;
}

std::vector<std::vector<int>> design_rows(const Design& d) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(d.n), std::vector<int>(d.columns.size()));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.p(); ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d.at(i, j);
  return rows;
}

std::variant<EhlichForm, FormMismatch> check_ehlich_form(const Design& design) {
  const int p = design.p();
  if (p == 0) return FormMismatch{-1, -1, 0, "design has no columns"};
  for (const auto& c : design.columns)
    if (c.length != design.n) return FormMismatch{-1, -1, 0, "column length differs from N"};
  if (design.columns[0] != SignColumn::ones(design.n))
    return FormMismatch{0, 0, design.columns[0].sum(), "column 0 is not the intercept"};

  const auto gram = design.gram();
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      const long x = gram(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (x != 3 && x != -1) return FormMismatch{a, b, x, "off-diagonal Gram entry is neither 3 nor -1"};
    }
  }

  // Label blocks by first appearance, then require the +3 relation to be
  // exactly "same label".
  std::vector<int> label(static_cast<std::size_t>(p), 0);
  int s = 0;
  for (int a = 0; a < p; ++a) {
    if (label[static_cast<std::size_t>(a)] != 0) continue;
    label[static_cast<std::size_t>(a)] = ++s;
    for (int b = a + 1; b < p; ++b)
      if (gram(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) == 3 &&
          label[static_cast<std::size_t>(b)] == 0)
        label[static_cast<std::size_t>(b)] = s;
  }
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      const long x = gram(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      const bool same = label[static_cast<std::size_t>(a)] == label[static_cast<std::size_t>(b)];
      if (same != (x == 3)) return FormMismatch{a, b, x, "the +3 relation is not a disjoint union of cliques"};
    }
  }

  if (p > design.n) return FormMismatch{-1, -1, p, "more columns than runs"};
  if (!valid_run_size(design.n)) return FormMismatch{-1, -1, design.n, "run size is not 3 mod 4"};
  const auto spec = make_spec(design.n, p, s);
  std::vector<int> sizes(static_cast<std::size_t>(s), 0);
  for (int g : label) ++sizes[static_cast<std::size_t>(g - 1)];
  const int intercept_size = sizes[0];
  std::sort(sizes.begin(), sizes.end());
  if (sizes != spec.block_sizes()) return FormMismatch{-1, -1, s, "block sizes do not match any K(N,p,s)"};

  EhlichForm form;
  form.spec = spec;
  form.group_of = std::move(label);
  if (spec.v == 0)
    form.type = TypeTag::pure;
  else
    form.type = intercept_size == spec.r ? TypeTag::type1 : TypeTag::type2;
  return form;
}

Signature Signature::of(const Design& d) {
  Signature sig;
  sig.n = d.n;
  auto sizes = d.group_sizes();
  sig.s = static_cast<int>(sizes.size()) - 1;
  sig.intercept_group_size = sig.s >= 1 ? sizes[1] : 0;
  if (sig.s >= 2) sig.other_sizes.assign(sizes.begin() + 2, sizes.end());
  std::sort(sig.other_sizes.begin(), sig.other_sizes.end());
  return sig;
}

int Signature::p() const {
  int p = intercept_group_size;
  for (int x : other_sizes) p += x;
  return p;
}

}  // namespace ehlich
