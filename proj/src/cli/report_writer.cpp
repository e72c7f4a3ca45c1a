#include "sea/cli/report_writer.hpp"

namespace sea::cli {

void ReportWriter::indent() {
  for (int i = 0; i < depth_; ++i) out_ << "  ";
}

void ReportWriter::field(const std::string& key, const std::string& value) {
  indent();
  out_ << key << ": " << value << "\n";
}

void ReportWriter::begin(const std::string& key) {
  indent();
  out_ << key << ":\n";
  ++depth_;
}

void ReportWriter::end() {
  if (depth_ > 0) --depth_;
}

void ReportWriter::item(const std::string& value) {
  indent();
  out_ << "- " << value << "\n";
}

}  // namespace sea::cli
