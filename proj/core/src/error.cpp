#include "teamclean/error.hpp"

namespace teamclean {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::parse: return "parse";
    case ErrorKind::ordering: return "ordering";
    case ErrorKind::domain: return "domain";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::interval: return "interval";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::topology: return "topology";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::exhausted: return "exhausted";
    case ErrorKind::partition_failure: return "partition_failure";
    case ErrorKind::branching_overflow: return "branching_overflow";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
      return 2;
    case ErrorKind::parse:
    case ErrorKind::ordering:
    case ErrorKind::domain:
    case ErrorKind::insufficient_data:
    case ErrorKind::interval:
    case ErrorKind::consistency:
      return 3;
    case ErrorKind::topology:
    case ErrorKind::infeasible:
    case ErrorKind::exhausted:
    case ErrorKind::partition_failure:
    case ErrorKind::branching_overflow:
    case ErrorKind::degenerate:
      return 4;
    case ErrorKind::io:
      return 5;
  }
  return 1;
}

}  // namespace teamclean
