#include "modex/propagator.hpp"

namespace modex {

namespace {
std::atomic<int> g_uid{0};
}

Propagator::Propagator(int rank, std::string name)
    : rank_(rank), name_(std::move(name)), uid_(g_uid.fetch_add(1)) {}

std::vector<PartialStructure> MemoSolver::solve(const PartialStructure& b) const {
  std::string k = b.key();
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  }
  auto result = inner_->solve(b);
  std::lock_guard lock(mu_);
  return memo_.emplace(std::move(k), std::move(result)).first->second;
}

}  // namespace modex
