#include <cctype>
#include <set>
#include <string>

#include <fmt/format.h>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/phylo/tree.hpp"

namespace rel::phylo {
namespace {

void write_node(const PhyloTree& t, int v, std::string& out) {
  const TreeNode& n = t.nodes[v];
  if (!n.children.empty()) {
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ',';
      write_node(t, n.children[i], out);
    }
    out += ')';
  } else {
    out += n.label;
  }
  if (n.parent >= 0 || n.length > 0) out += fmt::format(":{:.4f}", n.length);
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view s) : s_(s) {}

  PhyloTree parse() {
    skip_ws();
    if (at_end()) throw ParseError("newick: empty input");
    parse_node(-1);
    skip_ws();
    if (!at_end() && s_[pos_] == ')') {
      throw ParseError("newick: unbalanced parentheses");
    }
    if (!at_end() && s_[pos_] == ';') {
      ++pos_;
      skip_ws();
    }
    if (!at_end()) {
      throw ParseError("newick: trailing text at offset " +
                       std::to_string(pos_));
    }
    return reindex_preorder(tree_);
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  static bool is_label_char(char c) {
    return c != '(' && c != ')' && c != ',' && c != ':' && c != ';' &&
           !std::isspace(static_cast<unsigned char>(c));
  }

  std::string read_label() {
    std::size_t start = pos_;
    while (!at_end() && is_label_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  int parse_node(int parent) {
    int v = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{parent, {}, 0.0, ""});
    skip_ws();
    if (!at_end() && s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        int c = parse_node(v);
        tree_.nodes[v].children.push_back(c);
        skip_ws();
        if (at_end()) throw ParseError("newick: unbalanced parentheses");
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        throw ParseError(fmt::format("newick: unexpected '{}' at offset {}",
                                     s_[pos_], pos_));
      }
      if (tree_.nodes[v].children.size() != 2) {
        throw ParseError("newick: internal node is not binary");
      }
      skip_ws();
      read_label();  // internal labels carry no meaning here
    } else {
      std::string label = read_label();
      if (label.empty()) {
        throw ParseError("newick: missing taxon label at offset " +
                         std::to_string(pos_));
      }
      if (!labels_.insert(label).second) {
        throw ParseError("newick: duplicate label '" + label + "'");
      }
      tree_.nodes[v].label = std::move(label);
    }
    skip_ws();
    if (!at_end() && s_[pos_] == ':') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                           s_[pos_] == '.' || s_[pos_] == '-' ||
                           s_[pos_] == '+' || s_[pos_] == 'e' ||
                           s_[pos_] == 'E')) {
        ++pos_;
      }
      auto len = parse_double(s_.substr(start, pos_ - start));
      if (!len) throw ParseError("newick: malformed branch length");
      if (*len <= 0) throw ParseError("newick: branch length must be > 0");
      tree_.nodes[v].length = *len;
    } else if (parent >= 0) {
      if (at_end()) throw ParseError("newick: unbalanced parentheses");
      throw ParseError("newick: missing branch length");
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  PhyloTree tree_;
  std::set<std::string> labels_;
};

}  // namespace

std::string to_newick(const PhyloTree& t) {
  std::string out;
  if (!t.nodes.empty()) write_node(t, t.root(), out);
  out += ';';
  return out;
}

PhyloTree parse_newick(std::string_view text) {
  return NewickParser(text).parse();
}

}  // namespace rel::phylo
