#ifndef MIRRORLAB_TOOLS_CSV_HPP
#define MIRRORLAB_TOOLS_CSV_HPP

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace mirrorlab::tool {

/// CSV emitter: optional '#' provenance comments, one column-header line,
/// then rows at 17 significant digits so reruns reproduce byte-identical
/// files.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& line);
    void comments(const std::map<std::string, std::string>& keys);  // "# key = value"
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
};

std::string format_g17(double v);

}  // namespace mirrorlab::tool

#endif  // MIRRORLAB_TOOLS_CSV_HPP
