#include "ekr/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "ekr/error.hpp"

namespace ekr {

DerangementGraph::DerangementGraph(const ActionProfile& prof) : n_(prof.group().order()) {
  if (n_ > kMaxExactVertices)
    throw Error(ErrorKind::GroupTooLarge, "derangement graph limited to " + std::to_string(kMaxExactVertices) + " vertices");
  words_ = (n_ + 63) / 64;
  bits_.assign(n_ * words_, 0);
  const GroupTable& g = prof.group();
  for (std::uint32_t u = 0; u < n_; ++u) {
    std::uint64_t* r = bits_.data() + std::size_t{u} * words_;
    for (std::uint32_t v = 0; v < n_; ++v)
      if (prof.is_derangement(g.mult(u, g.inverse(v))))
        r[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
}

std::size_t DerangementGraph::degree(std::uint32_t u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w)
    d += static_cast<std::size_t>(__builtin_popcountll(row(u)[w]));
  return d;
}

namespace {

using Clock = std::chrono::steady_clock;
using Bits = std::vector<std::uint64_t>;

bool any_bit(const Bits& b) {
  for (auto w : b)
    if (w)
      return true;
  return false;
}

class Search {
public:
  Search(const DerangementGraph& g, bool complement, const SearchOptions& opts)
      : g_(g), complement_(complement), opts_(opts), W_(g.words()) {
    target_ = opts.prune_bound ? floor_bound(*opts.prune_bound) : SIZE_MAX;
    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.time_limit));
    tail_mask_ = g.size() % 64 ? (std::uint64_t{1} << (g.size() % 64)) - 1 : ~std::uint64_t{0};
  }

  SearchResult run() {
    Bits root(W_, 0);
    std::vector<std::uint32_t> C;
    if (opts_.seed_identity && g_.size() > 0) {
      C.push_back(0);
      neighbors_into(0, full(), root);
    } else {
      root = full();
    }
    best_ = C.empty() && g_.size() > 0 ? std::vector<std::uint32_t>{0} : C;
    best_size_ = best_.size();
    if (best_size_ >= target_)
      stop_ = true;

    if (!stop_ && any_bit(root)) {
      if (opts_.threads <= 1) {
        std::uint64_t nodes = 0;
        expand(C, root, nodes);
        nodes_ += nodes;
      } else {
        run_parallel(C, root);
      }
    }

    SearchResult r;
    r.best_set = best_;
    std::sort(r.best_set.begin(), r.best_set.end());
    r.nodes_explored = nodes_;
    r.time_limit_hit = timed_out_;
    if (best_size_ >= target_) {
      r.optimal = true;
      r.upper_bound_used = *opts_.prune_bound;
    } else if (!timed_out_) {
      r.optimal = true;
      r.upper_bound_used = static_cast<double>(best_size_);
    } else {
      r.optimal = false;
      r.upper_bound_used = opts_.prune_bound ? *opts_.prune_bound : static_cast<double>(g_.size());
    }
    return r;
  }

private:
  Bits full() const {
    Bits b(W_, ~std::uint64_t{0});
    if (W_)
      b[W_ - 1] = tail_mask_;
    return b;
  }

  // out = P intersected with the search-graph neighbourhood of v
  void neighbors_into(std::uint32_t v, const Bits& P, Bits& out) const {
    const std::uint64_t* r = g_.row(v);
    out.resize(W_);
    if (complement_) {
      for (std::size_t w = 0; w < W_; ++w)
        out[w] = P[w] & ~r[w];
      out[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    } else {
      for (std::size_t w = 0; w < W_; ++w)
        out[w] = P[w] & r[w];
    }
  }

  // Greedy sequential colouring in index order; classes[k] ascending.
  void colour(const Bits& P, std::vector<std::vector<std::uint32_t>>& classes) const {
    classes.clear();
    Bits U = P, Q(W_);
    while (any_bit(U)) {
      Q = U;
      std::vector<std::uint32_t> cls;
      for (std::size_t w = 0; w < W_; ++w) {
        while (Q[w]) {
          const std::uint32_t v = static_cast<std::uint32_t>(w * 64 + __builtin_ctzll(Q[w]));
          cls.push_back(v);
          U[w] &= ~(std::uint64_t{1} << (v & 63));
          Q[w] &= ~(std::uint64_t{1} << (v & 63));
          // drop search-graph neighbours of v from this colour class
          const std::uint64_t* r = g_.row(v);
          for (std::size_t x = w; x < W_; ++x)
            Q[x] &= complement_ ? r[x] : ~r[x];
        }
      }
      classes.push_back(std::move(cls));
    }
  }

  bool check_time(std::uint64_t& nodes) {
    if ((++nodes & 1023) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      stop_ = true;
    }
    return stop_;
  }

  void record(const std::vector<std::uint32_t>& C) {
    std::lock_guard<std::mutex> lock(mu_);
    if (C.size() > best_size_) {
      best_ = C;
      best_size_ = C.size();
      if (best_size_ >= target_)
        stop_ = true;
    }
  }

  void expand(std::vector<std::uint32_t>& C, Bits P, std::uint64_t& nodes) {
    if (check_time(nodes))
      return;
    std::vector<std::vector<std::uint32_t>> classes;
    colour(P, classes);
    Bits child;
    for (std::size_t k = classes.size(); k-- > 0;) {
      for (auto v : classes[k]) {
        if (stop_ || C.size() + k + 1 <= best_size_)
          return;
        C.push_back(v);
        neighbors_into(v, P, child);
        if (any_bit(child))
          expand(C, child, nodes);
        else if (C.size() > best_size_)
          record(C);
        C.pop_back();
        P[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      }
    }
  }

  void run_parallel(const std::vector<std::uint32_t>& C0, const Bits& root) {
    std::vector<std::vector<std::uint32_t>> classes;
    colour(root, classes);
    struct Branch {
      std::uint32_t v;
      std::size_t colour;
    };
    std::vector<Branch> branches;
    for (std::size_t k = classes.size(); k-- > 0;)
      for (auto v : classes[k])
        branches.push_back({v, k + 1});
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      std::uint64_t nodes = 0;
      Bits child;
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= branches.size() || stop_)
          break;
        if (C0.size() + branches[i].colour <= best_size_)
          continue;
        Bits P = root;
        for (std::size_t j = 0; j < i; ++j)
          P[branches[j].v >> 6] &= ~(std::uint64_t{1} << (branches[j].v & 63));
        std::vector<std::uint32_t> C = C0;
        C.push_back(branches[i].v);
        neighbors_into(branches[i].v, P, child);
        if (any_bit(child))
          expand(C, child, nodes);
        else if (C.size() > best_size_)
          record(C);
      }
      std::lock_guard<std::mutex> lock(mu_);
      nodes_ += nodes;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opts_.threads; ++t)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }

  const DerangementGraph& g_;
  bool complement_;
  SearchOptions opts_;
  std::size_t W_;
  std::size_t target_;
  std::uint64_t tail_mask_;
  Clock::time_point deadline_;
  std::mutex mu_;
  std::vector<std::uint32_t> best_;
  std::atomic<std::size_t> best_size_{0};
  std::atomic<bool> stop_{false};
  std::atomic<bool> timed_out_{false};
  std::uint64_t nodes_ = 0;
};

} // namespace

SearchResult max_coclique(const DerangementGraph& graph, const SearchOptions& opts) {
  return Search(graph, true, opts).run();
}

SearchResult max_clique(const DerangementGraph& graph, const SearchOptions& opts) {
  return Search(graph, false, opts).run();
}

SearchResult greedy_coclique(const ActionProfile& prof) {
  const GroupTable& g = prof.group();
  SearchResult r;
  std::vector<std::uint32_t> inv_set{0};
  r.best_set.push_back(0);
  for (std::uint32_t x = 1; x < g.order(); ++x) {
    bool ok = true;
    for (auto si : inv_set)
      if (prof.is_derangement(g.mult(x, si))) {
        ok = false;
        break;
      }
    if (ok) {
      r.best_set.push_back(x);
      inv_set.push_back(g.inverse(x));
    }
  }
  r.upper_bound_used = static_cast<double>(g.order());
  r.nodes_explored = g.order();
  return r;
}

} // namespace ekr
