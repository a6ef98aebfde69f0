#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slipns {

// Flat `key = value` configuration with `#` comments and comma-separated
// lists. Raw lines are preserved so the file round-trips bit-exactly into
// the run manifest.
class RunConfig {
  public:
    RunConfig() = default;
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    std::string serialize() const;  // exact echo of the source lines
    std::uint64_t hash() const;

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_list(const std::string& key, std::vector<double> fallback = {}) const;

    // Replace the key's line (or append one).
    void set(const std::string& key, const std::string& value);

  private:
    std::vector<std::string> lines_;

    const std::string* find(const std::string& key) const;
};

}  // namespace slipns
