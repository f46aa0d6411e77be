#include "redos/transducer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace redos {

namespace {

// Small helper for assembling rule right-hand sides.
struct TreeBuilder {
  OutputTree t;

  int leaf(int label) {
    t.nodes.push_back({label, {}});
    return static_cast<int>(t.nodes.size()) - 1;
  }
  int node(int label, std::vector<int> children) {
    t.nodes.push_back({label, std::move(children)});
    return static_cast<int>(t.nodes.size()) - 1;
  }
  OutputTree done(int root) {
    t.root = root;
    return std::move(t);
  }
};

OutputTree single_leaf(int stt_state) {
  TreeBuilder b;
  int r = b.leaf(encode_stt_leaf(stt_state));
  return b.done(r);
}

OutputTree state_over(int q, std::vector<int> child_labels) {
  TreeBuilder b;
  std::vector<int> kids;
  for (int l : child_labels) kids.push_back(b.leaf(l));
  int r = b.node(q, std::move(kids));
  return b.done(r);
}

}  // namespace

Stt build_stt(const Pnfa& flat) {
  flat.validate();
  for (int q = 0; q < flat.num_states; ++q)
    for (int t : flat.delta2[static_cast<size_t>(q)])
      if (flat.is_q2[t])
        throw std::invalid_argument(
            "transducer construction needs a flattened automaton");

  Stt stt;
  stt.num_states = 1 + 2 * flat.num_states;
  stt.alphabet = flat.alphabet;
  stt.alphabet.push_back(kFlat);
  stt.alphabet.push_back(kEnd);
  stt.rules.resize(static_cast<size_t>(stt.num_states));

  auto add = [&stt](int s, Symbol in, OutputTree rhs) {
    stt.rules[static_cast<size_t>(s)].push_back(Stt::Rule{in, std::move(rhs)});
  };

  // Start rules and the padding self-loops.
  add(0, kEnd, single_leaf(stt_accept_state(flat.q0)));
  add(0, kEnd, single_leaf(stt_fail_state(flat.q0)));
  for (int s = 0; s < stt.num_states; ++s) add(s, kFlat, single_leaf(s));

  for (int q = 0; q < flat.num_states; ++q) {
    const int aq = stt_accept_state(q);
    const int fq = stt_fail_state(q);
    if (!flat.is_q2[q]) {
      for (Symbol alpha : flat.alphabet) {
        if (alpha == kFlat || alpha == kEnd) continue;
        auto it = flat.delta1[static_cast<size_t>(q)].find(alpha);
        if (it != flat.delta1[static_cast<size_t>(q)].end()) {
          add(aq, alpha,
              state_over(q, {encode_stt_leaf(stt_accept_state(it->second))}));
          add(fq, alpha,
              state_over(q, {encode_stt_leaf(stt_fail_state(it->second))}));
        } else {
          add(fq, alpha, state_over(q, {kLabelRej}));
        }
      }
    } else {
      const auto& alts = flat.delta2[static_cast<size_t>(q)];
      for (size_t i = 0; i < alts.size(); ++i) {
        std::vector<int> labels;
        for (size_t j = 0; j < i; ++j)
          labels.push_back(encode_stt_leaf(stt_fail_state(alts[j])));
        labels.push_back(encode_stt_leaf(stt_accept_state(alts[i])));
        add(aq, kFlat, state_over(q, std::move(labels)));
      }
      std::vector<int> all_fail;
      for (int t : alts) all_fail.push_back(encode_stt_leaf(stt_fail_state(t)));
      if (all_fail.empty()) all_fail.push_back(kLabelRej);
      add(fq, kFlat, state_over(q, std::move(all_fail)));
    }
    if (flat.is_final(q)) {
      add(aq, kEnd, state_over(q, {kLabelAcc}));
    } else if (!flat.is_q2[q]) {
      add(fq, kEnd, state_over(q, {kLabelRej}));
    } else {
      TreeBuilder b;
      std::vector<int> kids;
      for (int t : flat.delta2[static_cast<size_t>(q)])
        kids.push_back(b.node(t, {b.leaf(kLabelRej)}));
      if (kids.empty()) kids.push_back(b.leaf(kLabelRej));
      int r = b.node(q, std::move(kids));
      add(fq, kEnd, b.done(r));
    }
  }
  return stt;
}

Word decorate(const Word& w) {
  Word out;
  out.push_back(kEnd);
  for (Symbol a : w) {
    out.push_back(kFlat);
    out.push_back(a);
  }
  out.push_back(kEnd);
  return out;
}

namespace {

void signature_rec(const OutputTree& t, int v, std::string& out) {
  const OutputTree::Node& n = t.nodes[static_cast<size_t>(v)];
  out += std::to_string(n.label);
  if (n.children.empty()) return;
  out += '(';
  for (size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ',';
    signature_rec(t, n.children[i], out);
  }
  out += ')';
}

void signature_rec(const BtrTree& t, int v, std::string& out) {
  const BtrTree::Node& n = t.nodes[static_cast<size_t>(v)];
  out += std::to_string(n.label);
  if (n.children.empty()) return;
  out += '(';
  for (size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ',';
    signature_rec(t, n.children[i], out);
  }
  out += ')';
}

// Copies cfg, substituting the chosen rule right-hand side for each
// transducer-state leaf.
OutputTree rewrite(const OutputTree& cfg, const std::vector<int>& leaves,
                   const std::vector<const OutputTree*>& chosen) {
  OutputTree out;
  std::map<int, size_t> leaf_index;
  for (size_t i = 0; i < leaves.size(); ++i) leaf_index[leaves[i]] = i;

  auto copy_rhs = [&out](auto&& self, const OutputTree& src, int v) -> int {
    const OutputTree::Node& n = src.nodes[static_cast<size_t>(v)];
    std::vector<int> kids;
    for (int c : n.children) kids.push_back(self(self, src, c));
    out.nodes.push_back({n.label, std::move(kids)});
    return static_cast<int>(out.nodes.size()) - 1;
  };
  auto copy_cfg = [&](auto&& self, int v) -> int {
    auto it = leaf_index.find(v);
    if (it != leaf_index.end()) {
      const OutputTree& rhs = *chosen[it->second];
      return copy_rhs(copy_rhs, rhs, rhs.root);
    }
    const OutputTree::Node& n = cfg.nodes[static_cast<size_t>(v)];
    std::vector<int> kids;
    for (int c : n.children) kids.push_back(self(self, c));
    out.nodes.push_back({n.label, std::move(kids)});
    return static_cast<int>(out.nodes.size()) - 1;
  };
  out.root = copy_cfg(copy_cfg, cfg.root);
  return out;
}

}  // namespace

std::string tree_signature(const OutputTree& t) {
  std::string out;
  if (t.root >= 0) signature_rec(t, t.root, out);
  return out;
}

std::string tree_signature(const BtrTree& t) {
  std::string out;
  if (t.root >= 0) signature_rec(t, t.root, out);
  return out;
}

SttRunResult run_stt(const Stt& stt, const Word& decorated,
                     std::uint64_t budget_nodes) {
  SttRunResult res;
  std::vector<OutputTree> frontier;
  {
    TreeBuilder b;
    int r = b.leaf(encode_stt_leaf(0));
    frontier.push_back(b.done(r));
  }
  res.peak_frontier_nodes = 1;
  std::set<std::string> output_sigs;
  auto collect = [&](OutputTree t) {
    if (output_sigs.insert(tree_signature(t)).second)
      res.outputs.push_back(std::move(t));
  };

  for (size_t pos = 0; pos < decorated.size(); ++pos) {
    Symbol sym = decorated[pos];
    // A state that self-loops on padding has rules only for padding and the
    // end marker, so when the next input symbol is a plain one, taking the
    // loop is certain death. Dropping those choices keeps the frontier
    // small without losing any output.
    bool prune_loops =
        sym == kFlat && pos + 1 < decorated.size() &&
        decorated[pos + 1] != kFlat && decorated[pos + 1] != kEnd;
    std::vector<OutputTree> next;
    std::set<std::string> seen;
    std::uint64_t nodes = 0;
    for (OutputTree& cfg : frontier) {
      std::vector<int> leaves;
      for (int v = 0; v < static_cast<int>(cfg.nodes.size()); ++v)
        if (is_stt_leaf(cfg.nodes[static_cast<size_t>(v)].label))
          leaves.push_back(v);
      if (leaves.empty()) {
        // A configuration without transducer states is done; branches that
        // finished simply never inspect the rest of the input.
        collect(std::move(cfg));
        continue;
      }

      std::vector<std::vector<const OutputTree*>> options;
      bool dead = false;
      for (int v : leaves) {
        int s = decode_stt_leaf(cfg.nodes[static_cast<size_t>(v)].label);
        options.emplace_back();
        std::vector<const OutputTree*> loops;
        for (const Stt::Rule& r : stt.rules[static_cast<size_t>(s)]) {
          if (r.input != sym) continue;
          bool is_loop = r.rhs.nodes.size() == 1 &&
                         r.rhs.nodes[0].label == encode_stt_leaf(s);
          if (is_loop && prune_loops)
            loops.push_back(&r.rhs);
          else
            options.back().push_back(&r.rhs);
        }
        // A state whose only padding rule is the loop must keep it.
        if (options.back().empty()) options.back() = std::move(loops);
        if (options.back().empty()) {
          dead = true;
          break;
        }
      }
      if (dead) continue;

      // Enumerate one rule choice per leaf.
      std::vector<size_t> idx(leaves.size(), 0);
      auto advance = [&](std::vector<size_t>& ix) {
        for (size_t k = 0; k < ix.size(); ++k) {
          if (++ix[k] < options[k].size()) return true;
          ix[k] = 0;
        }
        return false;
      };
      do {
        std::vector<const OutputTree*> chosen(leaves.size());
        for (size_t k = 0; k < leaves.size(); ++k)
          chosen[k] = options[k][idx[k]];
        OutputTree nt = rewrite(cfg, leaves, chosen);
        std::string sig = tree_signature(nt);
        if (!seen.insert(std::move(sig)).second) continue;
        nodes += nt.size();
        if (nodes > budget_nodes) {
          res.budget_exceeded = true;
          return res;
        }
        next.push_back(std::move(nt));
      } while (advance(idx));
    }
    frontier = std::move(next);
    res.peak_frontier_nodes = std::max<std::uint64_t>(res.peak_frontier_nodes, nodes);
    if (frontier.empty()) return res;
  }

  for (OutputTree& t : frontier) {
    bool complete = true;
    for (const OutputTree::Node& n : t.nodes)
      if (is_stt_leaf(n.label)) complete = false;
    if (complete) collect(std::move(t));
  }
  return res;
}

}  // namespace redos
