#include "gdr/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace gdr {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{
      "generation",        "total_evals",      "center_fitness_mean", "center_fitness_std",
      "actor_fitness",     "genetic_distance", "actor_update_weight", "best_pop_fitness"};
  return columns;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<GenerationLog>& logs) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const GenerationLog& l : logs) {
    out << l.generation << ',' << l.total_evals << ',' << format_real(l.center_fitness_mean) << ','
        << format_real(l.center_fitness_std) << ',' << format_real(l.actor_fitness) << ','
        << format_real(l.genetic_distance) << ',' << format_real(l.actor_update_weight) << ','
        << format_real(l.best_pop_fitness) << '\n';
  }
}

void write_csv(const std::vector<GenerationLog>& logs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, logs);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace gdr
