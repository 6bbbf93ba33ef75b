#include "plab/labeling.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "plab/rng.hpp"

namespace plab {

void Labeling::set(int u, int v, std::vector<int8_t> letters) {
  if (static_cast<int>(letters.size()) != j_)
    throw std::invalid_argument("Labeling: label must have length j");
  if (u == v) throw std::invalid_argument("Labeling: self-loop");
  if (u < v) {
    labels_[{u, v}] = std::move(letters);
  } else {
    std::vector<int8_t> inv(letters.rbegin(), letters.rend());
    for (auto& l : inv) l = -l;
    labels_[{v, u}] = std::move(inv);
  }
}

std::vector<int8_t> Labeling::raw(int u, int v) const {
  auto it = labels_.find(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
  if (it == labels_.end()) throw std::invalid_argument("Labeling: edge not labeled");
  if (u < v) return it->second;
  std::vector<int8_t> inv(it->second.rbegin(), it->second.rend());
  for (auto& l : inv) l = -l;
  return inv;
}

Word Labeling::alpha(int u, int v) const {
  auto letters = raw(u, v);
  return Word::reduce(letters);
}

nlohmann::json Labeling::to_json() const {
  nlohmann::json j;
  j["k"] = k_;
  j["j"] = j_;
  nlohmann::json edges = nlohmann::json::object();
  for (const auto& [key, letters] : labels_) {
    std::string name = std::to_string(key.first) + "-" + std::to_string(key.second);
    std::string text;
    for (int8_t l : letters)
      text.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
    edges[name] = text;
  }
  j["edges"] = edges;
  return j;
}

Labeling Labeling::from_json(const nlohmann::json& j) {
  Labeling out(j.at("k").get<int>(), j.at("j").get<int>());
  for (const auto& [name, text] : j.at("edges").items()) {
    auto dash = name.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("Labeling: bad edge key");
    int u = std::stoi(name.substr(0, dash));
    int v = std::stoi(name.substr(dash + 1));
    std::vector<int8_t> letters;
    for (char c : text.get<std::string>()) {
      if (c >= 'a' && c <= 'z') letters.push_back(static_cast<int8_t>(c - 'a' + 1));
      else if (c >= 'A' && c <= 'Z') letters.push_back(static_cast<int8_t>(-(c - 'A' + 1)));
      else throw std::invalid_argument("Labeling: bad letter");
    }
    out.set(u, v, std::move(letters));
  }
  return out;
}

Labeling sample_labeling(const UndirectedGraph& g, int k, int j, uint64_t seed) {
  if (k < 1 || j < 1) throw std::invalid_argument("sample_labeling: need k >= 1 and j >= 1");
  Labeling out(k, j);
  auto rng = make_rng(derive_seed(seed, "labeling"));
  std::uniform_int_distribution<int> letter(0, 2 * k - 1);
  for (auto [u, v] : g.edges()) {
    std::vector<int8_t> letters(j);
    for (int i = 0; i < j; ++i) {
      int raw = letter(rng);
      letters[i] = raw < k ? static_cast<int8_t>(raw + 1) : static_cast<int8_t>(-(raw - k + 1));
    }
    out.set(u, v, std::move(letters));
  }
  return out;
}

Word alpha_path(const Labeling& alpha, const UndirectedGraph& g, std::span<const int> path) {
  std::vector<int8_t> letters;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.has_edge(path[i], path[i + 1]))
      throw std::invalid_argument("alpha_path: consecutive vertices not adjacent");
    auto raw = alpha.raw(path[i], path[i + 1]);
    letters.insert(letters.end(), raw.begin(), raw.end());
  }
  return Word::reduce(letters);
}

std::vector<Word> relators(const Labeling& alpha, const UndirectedGraph& g) {
  if (!g.connected()) throw std::invalid_argument("relators: graph must be connected");
  int n = g.vertex_count();
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::vector<std::pair<int, int>> tree_order;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  auto path_to_root = [&](int v) {
    std::vector<int> path{v};
    while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
    return path;  // v .. root
  };
  std::vector<Word> out;
  for (auto [u, v] : g.edges()) {
    if (parent[u] == v || parent[v] == u) continue;  // tree edge
    // cycle: root -> u, edge (u,v), v -> root
    auto pu = path_to_root(u);
    std::reverse(pu.begin(), pu.end());  // root .. u
    auto pv = path_to_root(v);           // v .. root
    Word w = alpha_path(alpha, g, pu);
    w = w * alpha.alpha(u, v);
    w = w * alpha_path(alpha, g, pv);
    out.push_back(w);
  }
  return out;
}

}  // namespace plab
