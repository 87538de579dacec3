#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "groups.hpp"
#include "matrix.hpp"

namespace chev {

struct BallOptions {
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
};

// Layered breadth-first closure: layer 1 is the generator list (deduplicated,
// in file order), layer t+1 adds x*a for x of depth t and a in the list.
// Elements are appended in (depth, parent order, generator order), which
// does not depend on the worker count.
class Ball {
public:
  Ball(FieldPtr F, std::vector<Mat> gens, BallOptions opt = {})
    : F_(std::move(F)), opt_(opt) {
    for (auto& g : gens) {
      if (insert(g))
        gens_.push_back(g);
    }
    if (elems_.empty())
      fail(Err::NotGenerating, "empty generating set");
    ends_.push_back(elems_.size());
  }

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  const std::vector<Mat>& generators() const { return gens_; }
  const std::vector<Mat>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  int radius() const { return static_cast<int>(ends_.size()); }
  // |A^t| for 1 <= t <= radius()
  std::size_t size_at(int t) const { return ends_.at(std::size_t(t) - 1); }
  const std::vector<std::size_t>& layer_ends() const { return ends_; }
  bool closed() const { return closed_; }

  int depth_of(const Mat& m) const {
    auto it = index_.find(mat_key(*F_, m));
    if (it == index_.end())
      return -1;
    return depth_of_index(it->second);
  }
  int depth_of_index(std::size_t idx) const {
    return static_cast<int>(std::upper_bound(ends_.begin(), ends_.end(), idx) - ends_.begin()) + 1;
  }
  bool contains(const Mat& m) const { return index_.count(mat_key(*F_, m)) != 0; }

  // Adds one layer; returns false (and marks the ball closed) when nothing is new.
  bool step() {
    if (closed_)
      return false;
    std::size_t lo = ends_.size() >= 2 ? ends_[ends_.size() - 2] : 0;
    std::size_t hi = ends_.back();
    std::size_t total = (hi - lo) * gens_.size();
    unsigned T = opt_.threads == 0 ? 1 : opt_.threads;
    if (total < 4096)
      T = 1;
    std::vector<std::vector<std::pair<std::string, Mat>>> parts(T);
    auto work = [&](unsigned t) {
      std::size_t a = lo + (hi - lo) * t / T, b = lo + (hi - lo) * (t + 1) / T;
      auto& out = parts[t];
      for (std::size_t i = a; i < b; ++i)
        for (const auto& g : gens_) {
          Mat m = mat_mul(*F_, elems_[i], g);
          std::string k = mat_key(*F_, m);
          if (!index_.count(k))
            out.emplace_back(std::move(k), std::move(m));
        }
    };
    if (T == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < T; ++t)
        pool.emplace_back(work, t);
      for (auto& th : pool)
        th.join();
    }
    std::size_t before = elems_.size();
    for (auto& part : parts)
      for (auto& [k, m] : part)
        if (index_.emplace(k, elems_.size()).second) {
          elems_.push_back(std::move(m));
          if (elems_.size() > opt_.cap)
            fail(Err::BallCapExceeded, "ball exceeds cap of " + std::to_string(opt_.cap));
        }
    if (elems_.size() == before) {
      closed_ = true;
      return false;
    }
    ends_.push_back(elems_.size());
    return true;
  }

  void grow_to(int t) {
    while (radius() < t && step()) {
    }
  }
  void saturate() {
    while (step()) {
    }
  }

private:
  FieldPtr F_;
  BallOptions opt_;
  std::vector<Mat> gens_;
  std::vector<Mat> elems_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::size_t> ends_;
  bool closed_ = false;

  bool insert(const Mat& m) {
    if (!index_.emplace(mat_key(*F_, m), elems_.size()).second)
      return false;
    elems_.push_back(m);
    return true;
  }
};

// Generators plus inverses plus identity, order preserved, duplicates dropped.
inline std::vector<Mat> symmetrize(const Field& F, const std::vector<Mat>& gens) {
  if (gens.empty())
    return {};
  int n = gens.front().n;
  std::vector<Mat> out;
  std::unordered_map<std::string, int> seen;
  auto push = [&](const Mat& m) {
    if (seen.emplace(mat_key(F, m), 0).second)
      out.push_back(m);
  };
  push(identity(n));
  for (const auto& g : gens) {
    push(g);
    push(inverse(F, g));
  }
  return out;
}

// A fully enumerated group with an index from canonical keys.
struct Universe {
  FieldPtr F;
  GroupSpec spec;
  std::vector<Mat> gens;  // symmetric, with identity
  std::vector<Mat> elems;
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t order() const { return elems.size(); }
  long find(const Mat& m) const {
    auto it = index.find(mat_key(*F, m));
    return it == index.end() ? -1 : static_cast<long>(it->second);
  }
};

inline Universe materialize_from(FieldPtr F, const GroupSpec& spec, const std::vector<Mat>& gens,
                                 BallOptions opt = {}) {
  Universe u;
  u.F = F;
  u.spec = spec;
  u.gens = symmetrize(*F, gens);
  Ball b(F, u.gens, opt);
  b.saturate();
  u.elems = b.elements();
  for (std::size_t i = 0; i < u.elems.size(); ++i)
    u.index.emplace(mat_key(*F, u.elems[i]), static_cast<std::uint32_t>(i));
  return u;
}

// Materializes G(F_q) from the standard generators; refuses when the
// predicted order exceeds the cap, and checks the closure size against it.
inline Universe materialize(FieldPtr F, const GroupSpec& spec, BallOptions opt = {}) {
  BigInt predicted = group_order(spec, F->q());
  if (predicted > opt.cap)
    fail(Err::GroupTooLarge, spec.name() + " has " + predicted.str() + " elements");
  Universe u = materialize_from(F, spec, standard_generators(*F, spec), opt);
  if (BigInt(u.elems.size()) != predicted)
    fail(Err::TheoremViolation, "closure size " + std::to_string(u.elems.size()) +
                                    " differs from the order formula " + predicted.str());
  return u;
}

} // namespace chev
