#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace bohm {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex16(std::uint64_t value);

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(double value);
    CsvWriter& cell(long value);
    CsvWriter& cell(int value) { return cell(static_cast<long>(value)); }
    CsvWriter& cell(std::string_view text);
    void end_row();

    const std::filesystem::path& path() const { return path_; }

  private:
    void open();
    void separator();

    std::filesystem::path path_;
    std::ofstream out_;
    bool row_started_ = false;
};

/// Written last by every command; data files without a manifest are incomplete.
struct RunManifest {
    std::string command;
    std::string name;
    std::string config_hash;
    std::string code_version;
    double wall_time_s = 0.0;
    std::string status; // completed | partial | failed
    std::vector<std::string> outputs;
    std::vector<std::string> notes;

    void write(const std::filesystem::path& path) const;
};

} // namespace bohm
