#include <ostream>

#include "commands.hpp"
#include "polymer/io/csv.hpp"
#include "polymer/io/report.hpp"

namespace polymer::cli {

int run_report(const Globals& g, const ReportArgs& a, std::ostream& out) {
  std::vector<io::RunMeta> runs;
  for (const auto& path : a.inputs) runs.push_back(io::read_meta(path));
  emit(g.out, io::emit_report(runs), out);
  return 0;
}

}  // namespace polymer::cli
