#pragma once

#include <ostream>
#include <string>

namespace modex {

/// Line-oriented trace sink. Events:
///   DECIDE <atom>=<v>@<level>
///   PROP <pool_id> <atom>=<v>
///   EXPLAIN <pool_id> -> <new_id> <kind> [lits]   (lits for rank 0)
///   CONFLICT <atom>
///   LEARN [lits] backjump=<level>
///   MODEL {<atom>=<v>,...}
///   RESTART
///   STATS {...}
class TraceSink {
 public:
  TraceSink() = default;
  explicit TraceSink(std::ostream& os) : os_(&os) {}

  bool enabled() const { return os_ != nullptr; }
  void line(const std::string& s) {
    if (os_) *os_ << s << '\n';
  }

 private:
  std::ostream* os_ = nullptr;
};

}  // namespace modex
