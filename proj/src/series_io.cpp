#include "turncp/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace turncp::io {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("failed to move '" + tmp.string() + "' into place: " + ec.message());
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_value(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;  // from_chars rejects a leading plus
    const auto result = std::from_chars(first, last, out);
    return result.ec == std::errc() && result.ptr == last;
}

}  // namespace

std::vector<double> read_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view token = trim(line);
        if (token.empty()) continue;
        double value = 0.0;
        if (!parse_value(token, value)) {
            if (line_no == 1) continue;  // header
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": not a numeric value: '" + std::string(token) + "'");
        }
        if (!std::isfinite(value))
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": non-finite value: '" + std::string(token) + "'");
        samples.push_back(value);
    }
    return samples;
}

void write_series(const std::filesystem::path& path, std::span<const double> samples,
                  const std::string& header) {
    std::string content;
    content.reserve(samples.size() * 12 + header.size() + 2);
    content += header;
    content += '\n';
    for (double v : samples) {
        content += format_double(v);
        content += '\n';
    }
    write_file_atomic(path, content);
}

}  // namespace turncp::io
