#pragma once

#include <conjecturer/figure1.hpp>
#include <conjecturer/table.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conjecturer {

inline constexpr std::int64_t default_integer_lo = 1;
inline constexpr std::int64_t default_integer_hi = 1000;

/// Dataset names that need no file: "figure1", "integers" and
/// "integers:lo..hi".
class DatasetNotFound : public std::runtime_error {
public:
    explicit DatasetNotFound(const std::string & name) : std::runtime_error("dataset not found: " + name) {}
};

inline std::pair<std::int64_t, std::int64_t> parse_integer_range(std::string_view spec)
{
    auto dots = spec.find("..");
    if (dots == std::string_view::npos)
        throw std::invalid_argument("integer range must look like lo..hi");
    auto number = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || end != s.data() + s.size() || s.empty())
            throw std::invalid_argument("bad integer range bound '" + std::string(s) + "'");
        return v;
    };
    auto lo = number(spec.substr(0, dots)), hi = number(spec.substr(dots + 2));
    if (lo < 1 || hi > max_integer_value || lo > hi)
        throw std::invalid_argument("integer range must satisfy 1 <= lo <= hi <= " + std::to_string(max_integer_value));
    return {lo, hi};
}

inline std::optional<KnowledgeTable> builtin_table(std::string_view name)
{
    if (name == "figure1")
        return build_graph_table(figure1_graphs());
    if (name == "integers")
        return build_integer_table(default_integer_lo, default_integer_hi);
    if (name.starts_with("integers:")) {
        auto [lo, hi] = parse_integer_range(name.substr(9));
        return build_integer_table(lo, hi);
    }
    return std::nullopt;
}

/// Directory consulted for relative dataset paths, from CONJECTURER_DATA_DIR.
inline std::optional<std::filesystem::path> data_dir_from_env()
{
    if (const char * dir = std::getenv("CONJECTURER_DATA_DIR"); dir && *dir)
        return std::filesystem::path(dir);
    return std::nullopt;
}

/// A builtin name, a CSV path, or a CSV path relative to the data directory.
inline KnowledgeTable resolve_dataset(const std::string & name)
{
    if (auto t = builtin_table(name))
        return *t;
    std::filesystem::path path(name);
    if (std::filesystem::is_regular_file(path))
        return load_table(path);
    if (auto dir = data_dir_from_env(); dir && path.is_relative()) {
        auto candidate = *dir / path;
        if (std::filesystem::is_regular_file(candidate))
            return load_table(candidate);
    }
    throw DatasetNotFound(name);
}

} // namespace conjecturer
