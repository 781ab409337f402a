#include "b1_checker.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>
#include <queue>
#include <sstream>

namespace oracle {
namespace {

struct Tree {
  std::vector<std::vector<int>> adj;
  std::map<std::string, int> leaf;
};

// Minimal recursive-descent Newick reader: labels, nesting, lengths skipped.
Tree read_newick(const std::string& s) {
  Tree t;
  std::size_t i = 0;
  auto new_node = [&] {
    t.adj.emplace_back();
    return static_cast<int>(t.adj.size()) - 1;
  };
  auto skip_length = [&] {
    if (i < s.size() && s[i] == ':') {
      ++i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' ||
                              s[i] == 'e' || s[i] == 'E' || s[i] == '-' || s[i] == '+'))
        ++i;
    }
  };
  auto read_label = [&] {
    std::string l;
    while (i < s.size() && s[i] != ',' && s[i] != ')' && s[i] != ':' && s[i] != ';' &&
           s[i] != '(')
      l += s[i++];
    return l;
  };
  std::function<int()> node = [&]() -> int {
    int v = new_node();
    if (s[i] == '(') {
      ++i;
      for (;;) {
        int c = node();
        t.adj[v].push_back(c);
        t.adj[c].push_back(v);
        if (s[i] == ',') {
          ++i;
          continue;
        }
        if (s[i] != ')') throw std::runtime_error("bad newick");
        ++i;
        break;
      }
      read_label();
    } else {
      t.leaf[read_label()] = v;
    }
    skip_length();
    return v;
  };
  node();
  return t;
}

int bfs(const Tree& t, int a, int b) {
  std::vector<int> d(t.adj.size(), -1);
  std::queue<int> q;
  d[a] = 0;
  q.push(a);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == b) return d[v];
    for (int w : t.adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push(w);
      }
  }
  return -1;
}

}  // namespace

int newick_distance(const std::string& newick, const std::string& a, const std::string& b) {
  Tree t = read_newick(newick);
  return bfs(t, t.leaf.at(a), t.leaf.at(b));
}

std::vector<std::string> verify_b1(const rel::TaskInstance& inst) {
  std::vector<std::string> bad;
  const auto& gp = inst.gen_params;
  const auto& ans = std::get<rel::YesNoTaxa>(inst.answer);
  std::istringstream in(inst.prompt);
  std::string line, newick;
  std::map<std::string, std::string> seqs;
  std::string cur;
  bool in_tree = false;
  while (std::getline(in, line)) {
    if (line.rfind("Tree (Newick):", 0) == 0) {
      in_tree = true;
      continue;
    }
    if (in_tree && !line.empty() && newick.empty()) newick = line;
    if (!line.empty() && line[0] == '>') {
      cur = line.substr(1);
      seqs[cur];
    } else if (!cur.empty() && !in_tree && !line.empty()) {
      seqs[cur] += line;
    }
    if (line.empty()) cur.clear();
  }
  const int n_leaves = gp.at("n_leaves").get<int>();
  const std::size_t l_seq = gp.at("l_seq").get<std::size_t>();
  if (static_cast<int>(seqs.size()) != n_leaves) bad.push_back(inst.id + ": wrong number of taxa");
  for (const auto& [k, v] : seqs)
    if (v.size() != l_seq) bad.push_back(inst.id + ": sequence " + k + " has wrong length");
  if (newick.empty()) {
    bad.push_back(inst.id + ": no tree");
    return bad;
  }
  Tree t = read_newick(newick);
  if (static_cast<int>(t.leaf.size()) != n_leaves) bad.push_back(inst.id + ": tree leaf count");
  if (gp.at("negative").get<bool>() == ans.yes) bad.push_back(inst.id + ": answer/negative mismatch");
  if (!ans.yes) return bad;

  const int n_ht = gp.at("n_ht").get<int>();
  if (static_cast<int>(ans.taxa.size()) != n_ht) bad.push_back(inst.id + ": wrong taxa count");
  const std::string motif = gp.at("motif").get<std::string>();
  const std::size_t start = gp.at("start_col").get<std::size_t>() - 1;
  if (motif.size() != gp.at("l_motif").get<std::size_t>()) bad.push_back(inst.id + ": motif length");
  for (const auto& taxon : ans.taxa) {
    auto it = seqs.find(taxon);
    if (it == seqs.end() || it->second.substr(start, motif.size()) != motif)
      bad.push_back(inst.id + ": taxon " + taxon + " lacks the motif");
  }
  const int min_d = gp.at("min_distance").get<int>();
  std::vector<std::string> taxa(ans.taxa.begin(), ans.taxa.end());
  for (std::size_t a = 0; a < taxa.size(); ++a)
    for (std::size_t b = a + 1; b < taxa.size(); ++b) {
      if (!t.leaf.count(taxa[a]) || !t.leaf.count(taxa[b])) {
        bad.push_back(inst.id + ": answer taxon missing from tree");
        continue;
      }
      if (bfs(t, t.leaf.at(taxa[a]), t.leaf.at(taxa[b])) < min_d)
        bad.push_back(inst.id + ": taxa " + taxa[a] + "," + taxa[b] + " too close");
    }
  return bad;
}

}  // namespace oracle
