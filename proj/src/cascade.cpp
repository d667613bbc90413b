#include "factorix/cascade.hpp"

#include <algorithm>
#include <chrono>

#include "factorix/error.hpp"

namespace factorix {

namespace {

std::vector<std::size_t> as_pattern(const Word &w) {
  return std::vector<std::size_t>(w.begin(), w.end());
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Cuts w into consecutive runs whose products are sizes[0], sizes[1], ...
std::optional<std::vector<Word>> split(const Word &w, const std::vector<std::size_t> &sizes) {
  std::vector<Word> runs;
  std::size_t pos = 0;
  for (std::size_t m : sizes) {
    Word run;
    std::uint64_t prod = 1;
    while (prod < m && pos < w.size()) {
      prod *= w[pos];
      run.push_back(w[pos++]);
    }
    if (prod != m)
      return std::nullopt;
    runs.push_back(std::move(run));
  }
  if (pos != w.size())
    return std::nullopt;
  return runs;
}

/// Length of the shortest prefix of w starting at `from` with product m.
std::optional<std::size_t> run_length(const Word &w, std::size_t from, std::uint64_t m) {
  std::uint64_t prod = 1;
  std::size_t len = 0;
  while (prod < m && from + len < w.size())
    prod *= w[from + len++];
  if (prod != m)
    return std::nullopt;
  return len;
}

Word slice(const Word &w, std::size_t from, std::size_t len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

std::vector<std::size_t> sizes_of(const std::vector<FactorSet> &fs) {
  std::vector<std::size_t> out;
  for (const auto &f : fs)
    out.push_back(f.size());
  return out;
}

} // namespace

Cascade::Cascade(GroupPtr group, const Catalog *catalog, CascadeOptions options)
    : group_(std::move(group)), catalog_(catalog), opt_(options), budget_(options.budget_seconds) {
  if (catalog_)
    cg_ = catalog_->match(*group_);
  // Same elements means same canonical indices; adopt the catalog's table
  // so its subgroups and sets apply directly.
  if (cg_)
    group_ = cg_->group;
}

double Cascade::remaining(double cap) const {
  double left = cap;
  if (opt_.budget_seconds > 0)
    left = std::min(left, opt_.budget_seconds - budget_.elapsed());
  return std::max(left, 1e-3);
}

std::optional<Certificate> Cascade::subgroup_certificate(const Subgroup &h, const Word &word) {
  const auto key = std::make_pair(std::vector<Elem>(h.members().elements().begin(),
                                                    h.members().elements().end()),
                                  word);
  if (auto it = sub_cache_.find(key); it != sub_cache_.end())
    return it->second;
  std::optional<Certificate> out;
  if (word_product(word) == h.order()) {
    GroupPtr table = subgroup_table(h);
    if (word.size() <= 1) {
      out = whole_group_certificate(table);
    } else if (h.order() <= opt_.generic_cap && !budget_.expired()) {
      SearchTask t;
      t.group = table;
      t.pattern = as_pattern(word);
      t.mode = SearchMode::FindFirst;
      t.limits.budget_seconds = remaining(opt_.step_budget_seconds);
      t.limits.threads = opt_.threads;
      t.generic_cap = opt_.generic_cap;
      auto rep = generic_search(t);
      if (!rep.solutions.empty())
        out = rep.solutions.front();
    }
  }
  sub_cache_.emplace(key, out);
  return out;
}

std::optional<Certificate> Cascade::quotient_certificate(const Subgroup &n, const Word &word) {
  const auto key = std::make_pair(std::vector<Elem>(n.members().elements().begin(),
                                                    n.members().elements().end()),
                                  word);
  if (auto it = quotient_cache_.find(key); it != quotient_cache_.end())
    return it->second;
  std::optional<Certificate> out;
  Quotient q = quotient_group(n);
  if (word_product(word) == q.table->order()) {
    if (word.size() <= 1) {
      out = whole_group_certificate(q.table);
    } else if (q.table->order() <= opt_.generic_cap && !budget_.expired()) {
      SearchTask t;
      t.group = q.table;
      t.pattern = as_pattern(word);
      t.mode = SearchMode::FindFirst;
      t.limits.budget_seconds = remaining(opt_.step_budget_seconds);
      t.limits.threads = opt_.threads;
      t.generic_cap = opt_.generic_cap;
      auto rep = generic_search(t);
      if (!rep.solutions.empty())
        out = rep.solutions.front();
    }
  }
  quotient_cache_.emplace(key, out);
  return out;
}

std::optional<Certificate> Cascade::refine(const Coarse &c, const Word &word,
                                           std::vector<std::string> &trail) {
  std::vector<std::size_t> sizes;
  for (const auto &f : c.factors)
    sizes.push_back(f.set.size());
  auto runs = split(word, sizes);
  if (!runs)
    return std::nullopt;
  std::vector<std::string> notes;
  Certificate out{group_, {}};
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    const auto &f = c.factors[i];
    const Word &sw = (*runs)[i];
    if (sw.size() == 1) {
      out.factors.push_back(f.set);
      continue;
    }
    if (!f.parts.empty() && sizes_of(f.parts) == as_pattern(sw)) {
      for (const auto &p : f.parts)
        out.factors.push_back(p);
      notes.push_back("factor " + std::to_string(i + 1) + " split into its listed parts");
      continue;
    }
    if (!f.subgroup)
      return std::nullopt;
    auto sc = subgroup_certificate(*f.subgroup, sw);
    if (!sc)
      return std::nullopt;
    for (auto &p : embed_factors(*sc, *f.subgroup))
      out.factors.push_back(std::move(p));
    notes.push_back("factor " + std::to_string(i + 1) + " (subgroup" +
                    (f.subgroup_id ? " " + *f.subgroup_id : std::string()) + ") refined as " +
                    word_to_string(sw) + " by generic search");
  }
  if (!verify_certificate(out))
    return std::nullopt;
  trail.push_back(c.origin);
  trail.insert(trail.end(), notes.begin(), notes.end());
  return out;
}

std::optional<Certificate> Cascade::refine_entry(const CatalogEntry &e, const Word &word,
                                                 std::vector<std::string> &trail) {
  if (e.type != EntryType::Explicit)
    throw Error(ErrorCode::PreconditionFailed, e.id + " is not an explicit entry");
  return refine(Coarse{e.factors, "catalog " + e.id}, word, trail);
}

std::optional<Certificate> Cascade::step_catalog(const Word &w, std::vector<std::string> &trail) {
  if (!cg_)
    return std::nullopt;
  for (const auto &e : catalog_->entries()) {
    if (e.type != EntryType::Explicit || e.group_id != cg_->id)
      continue;
    Coarse c{e.factors, "catalog " + e.id};
    if (auto cert = refine(c, w, trail))
      return cert;
  }
  return std::nullopt;
}

std::optional<Certificate> Cascade::step_sandwich(const Word &w, std::vector<std::string> &trail) {
  if (!cg_)
    return std::nullopt;
  const std::size_t n = group_->order();
  const auto &subs = cg_->subgroups;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (i == j)
        continue;
      const Subgroup &a = subs[i].second;
      const Subgroup &b = subs[j].second;
      if (n % (a.order() * b.order()) != 0)
        continue;
      const std::size_t s = n / (a.order() * b.order());
      if (s > 1 && !is_prime(s))
        continue;
      auto la = run_length(w, 0, a.order());
      if (!la)
        continue;
      std::size_t pos = *la;
      if (s > 1) {
        if (pos >= w.size() || w[pos] != s)
          continue;
        ++pos;
      }
      auto lb = run_length(w, pos, b.order());
      if (!lb || pos + *lb != w.size())
        continue;
      auto [it, fresh] = condition_cache_.try_emplace({i, j}, false);
      if (fresh)
        it->second = conjugate_intersection_trivial(a, b);
      if (!it->second)
        continue;
      auto ca = subgroup_certificate(a, slice(w, 0, *la));
      if (!ca)
        continue;
      auto cb = subgroup_certificate(b, slice(w, pos, *lb));
      if (!cb)
        continue;
      Certificate c = compose_sandwich(a, *ca, b, *cb);
      if (!verify_certificate(c))
        continue;
      trail.push_back("sandwich A=" + subs[i].first + " B=" + subs[j].first + ", " +
                      std::to_string(s) + " double coset(s)");
      trail.push_back("A refined as " + word_to_string(slice(w, 0, *la)) + ", B as " +
                      word_to_string(slice(w, pos, *lb)) + " by generic search");
      return c;
    }
  }
  return std::nullopt;
}

std::optional<Certificate> Cascade::step_lift(const Word &w, std::vector<std::string> &trail) {
  if (!cg_)
    return std::nullopt;
  const std::size_t n = group_->order();
  for (const auto &[name, h] : cg_->subgroups) {
    const std::size_t index = n / h.order();
    if (index > 1 && is_prime(index)) {
      if (w.back() == index) {
        if (auto sc = subgroup_certificate(h, slice(w, 0, w.size() - 1))) {
          Certificate c = lift_by_transversal(*sc, h, Side::Right);
          if (verify_certificate(c)) {
            trail.push_back("right transversal of " + name + " appended (index " +
                            std::to_string(index) + ")");
            return c;
          }
        }
      }
      if (w.front() == index) {
        if (auto sc = subgroup_certificate(h, slice(w, 1, w.size() - 1))) {
          Certificate c = lift_by_transversal(*sc, h, Side::Left);
          if (verify_certificate(c)) {
            trail.push_back("left transversal of " + name + " prepended (index " +
                            std::to_string(index) + ")");
            return c;
          }
        }
      }
    }
    if (h.order() == 1 || h.order() == n || !is_normal(h))
      continue;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      auto len = run_length(w, pos, h.order());
      if (!len)
        continue;
      Word rest = slice(w, 0, pos);
      Word tail = slice(w, pos + *len, w.size() - pos - *len);
      rest.insert(rest.end(), tail.begin(), tail.end());
      auto qc = quotient_certificate(h, rest);
      auto nc = subgroup_certificate(h, slice(w, pos, *len));
      if (!qc || !nc)
        continue;
      Certificate c = lift_by_quotient(*qc, h, pos);
      if (*len > 1)
        c = refine_factor(c, pos, embed_factors(*nc, h));
      if (verify_certificate(c)) {
        trail.push_back("quotient by normal " + name + " lifted, " + name + " at position " +
                        std::to_string(pos + 1));
        return c;
      }
    }
  }
  return std::nullopt;
}

const std::vector<Cascade::Coarse> &Cascade::anchored_solutions() {
  if (anchored_)
    return *anchored_;
  anchored_.emplace();
  if (!cg_)
    return *anchored_;
  for (const auto &e : catalog_->entries()) {
    if (e.type != EntryType::Search || e.group_id != cg_->id)
      continue;
    if (budget_.expired())
      break;
    SearchTask t = catalog_->search_task(e);
    t.mode = SearchMode::FindFirst;
    t.limits.max_solutions = 1;
    t.limits.threads = opt_.threads;
    t.limits.budget_seconds = remaining(std::min(opt_.step_budget_seconds, e.budget_seconds));
    SearchReport rep;
    try {
      rep = run_search(t);
    } catch (const Error &) {
      continue;
    }
    if (rep.solutions.empty())
      continue;
    Coarse c;
    c.origin = "anchored " + to_string(e.strategy) + " search " + e.id;
    const auto &sol = rep.solutions.front();
    for (std::size_t k = 0; k < sol.factors.size(); ++k) {
      CatalogFactor f;
      f.set = sol.factors[k];
      if (k == 0 && t.first && t.first->subgroup)
        f.subgroup = t.first->subgroup;
      if (k + 1 == sol.factors.size() && t.last && t.last->subgroup)
        f.subgroup = t.last->subgroup;
      c.factors.push_back(std::move(f));
    }
    anchored_->push_back(std::move(c));
  }
  return *anchored_;
}

std::optional<Certificate> Cascade::step_anchored(const Word &w, std::vector<std::string> &trail) {
  for (const auto &c : anchored_solutions())
    if (auto cert = refine(c, w, trail))
      return cert;
  return std::nullopt;
}

std::optional<Certificate> Cascade::step_generic(const Word &w, std::vector<std::string> &trail,
                                                 bool &budget_hit) {
  if (group_->order() > opt_.generic_cap)
    return std::nullopt;
  SearchTask t;
  t.group = group_;
  t.pattern = as_pattern(w);
  t.mode = SearchMode::FindFirst;
  t.limits.budget_seconds = remaining(opt_.step_budget_seconds);
  t.limits.threads = opt_.threads;
  t.generic_cap = opt_.generic_cap;
  auto rep = generic_search(t);
  if (rep.budget_hit)
    budget_hit = true;
  if (rep.solutions.empty())
    return std::nullopt;
  trail.push_back("generic normalized backtracking");
  return rep.solutions.front();
}

CascadeResult Cascade::solve(const Word &word) {
  CascadeResult r;
  const std::size_t n = group_->order();
  if (word_product(word) != n || !is_prime_word(word)) {
    r.diagnostics.push_back("input: " + word_to_string(word) +
                            " is not a prime word with product " + std::to_string(n));
    return r;
  }
  if (word.size() <= 1) {
    r.certificate = whole_group_certificate(group_);
    r.step = "trivial";
    r.trail.push_back("the whole group is its own factorization");
    return r;
  }

  std::vector<Word> orientations{word};
  if (reversed(word) != word)
    orientations.push_back(reversed(word));

  using Step = std::optional<Certificate> (Cascade::*)(const Word &, std::vector<std::string> &);
  const std::pair<const char *, Step> steps[] = {
      {"catalog", &Cascade::step_catalog},
      {"sandwich", &Cascade::step_sandwich},
      {"lift", &Cascade::step_lift},
      {"anchored", &Cascade::step_anchored},
  };

  auto accept = [&](Certificate c, std::size_t o, const char *step, std::vector<std::string> trail) {
    if (o == 1) {
      c = reverse(c);
      trail.push_back("reversed to " + word_to_string(word));
    }
    c = strip_singletons(c);
    if (!verify_certificate(c))
      return false;
    r.certificate = std::move(c);
    r.step = step;
    r.trail = std::move(trail);
    return true;
  };

  for (const auto &[name, fn] : steps) {
    for (std::size_t o = 0; o < orientations.size(); ++o) {
      if (budget_.expired()) {
        r.budget_hit = true;
        r.diagnostics.push_back("budget exhausted before step " + std::string(name));
        return r;
      }
      std::vector<std::string> trail;
      std::optional<Certificate> c;
      try {
        c = (this->*fn)(orientations[o], trail);
      } catch (const Error &e) {
        r.diagnostics.push_back(std::string(name) + ": " + e.what());
      }
      if (c && accept(std::move(*c), o, name, std::move(trail)))
        return r;
    }
    r.diagnostics.push_back(std::string(name) + ": no certificate");
  }
  for (std::size_t o = 0; o < orientations.size(); ++o) {
    std::vector<std::string> trail;
    bool hit = false;
    auto c = step_generic(orientations[o], trail, hit);
    r.budget_hit = r.budget_hit || hit;
    if (c && accept(std::move(*c), o, "generic", std::move(trail)))
      return r;
  }
  r.diagnostics.push_back(group_->order() > opt_.generic_cap
                              ? "generic: |G| exceeds the cap of " + std::to_string(opt_.generic_cap)
                              : std::string(r.budget_hit ? "generic: budget exhausted"
                                                         : "generic: exhausted without a certificate"));
  return r;
}

CascadeResult Cascade::solve_pattern(const std::vector<std::size_t> &pattern) {
  Word letters;
  bool all_prime = true;
  std::uint64_t product = 1;
  for (auto m : pattern) {
    product *= m;
    all_prime = all_prime && is_prime(m);
  }
  CascadeResult r;
  if (product != group_->order()) {
    r.diagnostics.push_back("input: pattern product differs from |G|");
    return r;
  }
  if (all_prime)
    return solve(Word(pattern.begin(), pattern.end()));

  // Every way of writing each entry as an ordered product of primes.
  std::vector<std::vector<Word>> choices;
  for (auto m : pattern)
    choices.push_back(m == 1 ? std::vector<Word>{Word{}} : enumerate_words(m));
  std::vector<std::size_t> pick(pattern.size(), 0);
  for (;;) {
    Word w;
    for (std::size_t i = 0; i < pattern.size(); ++i)
      w.insert(w.end(), choices[i][pick[i]].begin(), choices[i][pick[i]].end());
    CascadeResult sub = solve(w);
    r.diagnostics.insert(r.diagnostics.end(), sub.diagnostics.begin(), sub.diagnostics.end());
    r.budget_hit = r.budget_hit || sub.budget_hit;
    if (sub.certificate) {
      Certificate c = *sub.certificate;
      // Merge each entry's letters back into one factor, last entry first
      // so earlier positions stay put.
      std::vector<std::size_t> start(pattern.size(), 0);
      for (std::size_t i = 1; i < pattern.size(); ++i)
        start[i] = start[i - 1] + choices[i - 1][pick[i - 1]].size();
      for (std::size_t i = pattern.size(); i-- > 0;)
        for (std::size_t k = 1; k < choices[i][pick[i]].size(); ++k)
          c = merge_adjacent(c, start[i]);
      if (verify_certificate(c)) {
        r.certificate = std::move(c);
        r.step = sub.step;
        r.trail = sub.trail;
        r.trail.push_back("adjacent factors merged to " +
                          word_to_string(Word(pattern.begin(), pattern.end())));
        return r;
      }
    }
    if (budget_.expired())
      return r;
    std::size_t i = pattern.size();
    while (i-- > 0) {
      if (++pick[i] < choices[i].size())
        break;
      pick[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1))
      break;
  }
  return r;
}

CascadeResult strategy_cascade(const GroupPtr &group, const Word &word, const Catalog *catalog,
                               CascadeOptions options) {
  Cascade c(group, catalog, options);
  auto r = c.solve(word);
  if (!r.certificate) {
    std::string msg = "no certificate for " + word_to_string(word);
    for (const auto &d : r.diagnostics)
      msg += "; " + d;
    throw Error(ErrorCode::AllStrategiesFailed, msg);
  }
  return r;
}

std::string MultifoldReport::verdict() const {
  return complete() ? "MULTIFOLD-CERTIFIED" : "INCOMPLETE";
}

MultifoldReport multifold(const GroupPtr &group, const Catalog *catalog, CascadeOptions options) {
  const auto t0 = std::chrono::steady_clock::now();
  Cascade cascade(group, catalog, options);
  MultifoldReport rep;
  rep.order = group->order();
  PatternPlan plan = make_plan(rep.order);
  rep.omega = plan.omega;
  if (const CatalogGroup *cg = cascade.catalog_group()) {
    for (const auto &lift : cg->prime_index_lifts) {
      const std::size_t index = rep.order / cg->subgroup(lift.subgroup).order();
      if (lift.multifold && is_prime(index))
        plan = prime_index_discard(std::move(plan), index, true);
    }
  }
  const auto words = rep.order >= 2 ? enumerate_reversal_classes(rep.order) : std::vector<Word>{};
  for (const auto &w : words) {
    ClassStatus st;
    st.word = w;
    for (const auto &d : plan.discarded)
      if (d.word == w)
        st.discard_reason = d.reason;
    st.result = cascade.solve(w);
    st.certified = st.result.certificate.has_value();
    rep.certified += st.certified ? 1 : 0;
    rep.budget_hit = rep.budget_hit || st.result.budget_hit;
    rep.classes.push_back(std::move(st));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

} // namespace factorix
