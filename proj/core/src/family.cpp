#include "cml/family.hpp"

#include <algorithm>
#include <set>

#include "cml/textio.hpp"

namespace cml {

std::string fresh_variable(const Vocabulary& vocab, const std::string& base) {
  std::string name = base;
  while (vocab.has_symbol(name)) name += '_';
  return name;
}

std::vector<std::string> family_variable_pool(const Vocabulary& vocab, int n) {
  std::vector<std::string> pool;
  pool.reserve(n);
  for (int i = 1; i <= n; ++i) pool.push_back(fresh_variable(vocab, "x" + std::to_string(i)));
  return pool;
}

namespace {

// Terms over the pool with bounded function nesting, in canonical order:
// depth 0 variables first, then per depth level function applications in
// declaration order with argument tuples in lexicographic order.
std::vector<Term> term_list(const Vocabulary& vocab, const std::vector<std::string>& pool,
                            int term_depth, std::size_t cap) {
  std::vector<Term> terms;
  std::vector<int> depth_of;
  for (const std::string& v : pool) {
    terms.push_back(Term::variable(v));
    depth_of.push_back(0);
  }
  for (int d = 1; d <= term_depth; ++d) {
    std::size_t prev = terms.size();
    for (const auto& f : vocab.functions()) {
      std::vector<std::size_t> idx(f.arity, 0);
      while (true) {
        int max_depth = 0;
        for (std::size_t i : idx) max_depth = std::max(max_depth, depth_of[i]);
        if (max_depth == d - 1) {  // exactly one level deeper each round
          std::vector<Term> args;
          for (std::size_t i : idx) args.push_back(terms[i]);
          terms.push_back(Term::apply(f.name, std::move(args)));
          depth_of.push_back(d);
          if (terms.size() >= cap) return terms;
        }
        int pos = f.arity - 1;
        while (pos >= 0 && ++idx[pos] == prev) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }
  return terms;
}

struct Generator {
  const Vocabulary& vocab;
  const FamilyOptions& opts;
  std::vector<std::string> pool;
  std::vector<Formula> out;
  std::vector<int> height_of;
  std::set<std::string> seen;

  bool push(const Formula& f) {
    std::string key = serialize_formula(f, vocab);
    if (!seen.insert(key).second) return false;
    out.push_back(f);
    height_of.push_back(f.height());
    return true;
  }

  std::size_t quota_for(int height) const {
    std::size_t share = opts.max_count / std::max(1, opts.max_height);
    return height == opts.max_height ? opts.max_count : share * height;
  }

  void run() {
    pool = family_variable_pool(vocab, opts.var_pool);
    std::vector<Term> terms = term_list(vocab, pool, opts.term_depth, 64);

    // Height 1: atoms.
    for (const auto& p : vocab.predicates()) {
      std::vector<std::size_t> idx(p.arity, 0);
      while (true) {
        std::vector<Term> args;
        for (std::size_t i : idx) args.push_back(terms[i]);
        push(Formula::atom(p.name, std::move(args)));
        if (out.size() >= quota_for(1)) break;
        int pos = p.arity - 1;
        while (pos >= 0 && ++idx[pos] == terms.size()) idx[pos--] = 0;
        if (pos < 0) break;
      }
      if (out.size() >= quota_for(1)) break;
    }

    for (int h = 2; h <= opts.max_height; ++h) {
      const std::size_t quota = quota_for(h);
      const std::size_t level_end = out.size();

      // Quantifiers over height h-1 bodies.
      for (std::size_t i = 0; i < level_end && out.size() < quota; ++i) {
        if (height_of[i] != h - 1) continue;
        for (const std::string& v : pool) {
          if (!out[i].has_free(v)) continue;
          push(Formula::sup(v, out[i]));
          if (out.size() >= quota) break;
          push(Formula::inf(v, out[i]));
          if (out.size() >= quota) break;
        }
      }

      // Unary connectives.
      if (!opts.positive_only) {
        for (std::size_t i = 0; i < level_end && out.size() < quota; ++i) {
          if (height_of[i] != h - 1) continue;
          push(Formula::lift(Connective::neg(), {out[i]}));
          if (out.size() >= quota) break;
          push(Formula::lift(Connective::half(), {out[i]}));
        }
      }

      // Binary connectives over pairs with max operand height h-1.
      std::vector<Connective> binaries;
      binaries.push_back(Connective::min());
      binaries.push_back(Connective::max());
      if (!opts.positive_only) {
        binaries.push_back(Connective::dotminus());
        binaries.push_back(Connective::dotplus());
        binaries.push_back(Connective::absdiff());
      }
      for (std::size_t i = 0; i < level_end && out.size() < quota; ++i) {
        for (std::size_t j = 0; j < level_end && out.size() < quota; ++j) {
          if (std::max(height_of[i], height_of[j]) != h - 1) continue;
          for (const Connective& c : binaries) {
            push(Formula::lift(c, {out[i], out[j]}));
            if (out.size() >= quota) break;
          }
        }
      }
    }
  }
};

}  // namespace

std::vector<Formula> generate_family(const Vocabulary& vocab, const FamilyOptions& options) {
  Generator g{vocab, options};
  g.run();
  return std::move(g.out);
}

std::vector<Formula> generate_sentence_family(const Vocabulary& vocab,
                                              const FamilyOptions& options) {
  std::vector<Formula> open = generate_family(vocab, options);
  std::vector<Formula> sentences;
  std::set<std::string> seen;
  for (const Formula& f : open) {
    Formula closed = f;
    std::vector<std::string> vars = f.free_vars();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = Formula::sup(*it, closed);
    std::string key = serialize_formula(closed, vocab);
    if (seen.insert(key).second) sentences.push_back(std::move(closed));
  }
  return sentences;
}

}  // namespace cml
