#include "bootlab/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bootlab {

RecordFormat parse_format(std::string_view text) {
    if (text == "csv" || text == "CSV") return RecordFormat::Csv;
    if (text == "json" || text == "JSON") return RecordFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string opt_csv(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<T>)
        return num(*v);
    else
        return std::to_string(*v);
}

template <class T>
std::string opt_json(const std::optional<T>& v) {
    return v ? opt_csv(v) : "null";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

template <class T>
std::optional<T> opt_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>)
        return std::stod(s);
    else
        return static_cast<T>(std::stoll(s));
}

}  // namespace

std::string to_csv(const std::vector<EstimateRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << csv_field(r.experiment) << ',' << opt_csv(r.theta) << ',' << opt_csv(r.ell) << ',' << opt_csv(r.a)
            << ',' << opt_csv(r.n) << ',' << opt_csv(r.L) << ',' << csv_field(r.rule) << ',' << csv_field(r.mode)
            << ',' << csv_field(r.boundary) << ',' << r.trials << ',' << r.successes << ',' << num(r.estimate)
            << ',' << num(r.standardError) << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<EstimateRecord>& records) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << (i ? ",\n " : "\n ") << "{\"experiment\": " << json_string(r.experiment)
            << ", \"theta\": " << opt_json(r.theta) << ", \"ell\": " << opt_json(r.ell)
            << ", \"a\": " << opt_json(r.a) << ", \"n\": " << opt_json(r.n) << ", \"L\": " << opt_json(r.L)
            << ", \"rule\": " << json_string(r.rule) << ", \"mode\": " << json_string(r.mode)
            << ", \"boundary\": " << json_string(r.boundary) << ", \"trials\": " << r.trials
            << ", \"successes\": " << r.successes << ", \"estimate\": " << num(r.estimate)
            << ", \"stderr\": " << num(r.standardError) << ", \"seed\": " << r.seed << "}";
    }
    out << (records.empty() ? "]\n" : "\n]\n");
    return out.str();
}

std::string render_records(const std::vector<EstimateRecord>& records, RecordFormat format) {
    return format == RecordFormat::Csv ? to_csv(records) : to_json(records);
}

std::vector<EstimateRecord> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing or unexpected CSV header");
    std::vector<EstimateRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 14) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
        EstimateRecord r;
        r.experiment = f[0];
        r.theta = opt_parse<int>(f[1]);
        r.ell = opt_parse<int>(f[2]);
        r.a = opt_parse<double>(f[3]);
        r.n = opt_parse<long long>(f[4]);
        r.L = opt_parse<long long>(f[5]);
        r.rule = f[6];
        r.mode = f[7];
        r.boundary = f[8];
        r.trials = std::stoull(f[9]);
        r.successes = std::stoull(f[10]);
        r.estimate = std::stod(f[11]);
        r.standardError = std::stod(f[12]);
        r.seed = std::stoull(f[13]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<EstimateRecord> parse_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    std::vector<EstimateRecord> out;
    for (const auto& j : doc) {
        EstimateRecord r;
        r.experiment = j.at("experiment").get<std::string>();
        if (!j.at("theta").is_null()) r.theta = j["theta"].get<int>();
        if (!j.at("ell").is_null()) r.ell = j["ell"].get<int>();
        if (!j.at("a").is_null()) r.a = j["a"].get<double>();
        if (!j.at("n").is_null()) r.n = j["n"].get<long long>();
        if (!j.at("L").is_null()) r.L = j["L"].get<long long>();
        r.rule = j.at("rule").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.boundary = j.at("boundary").get<std::string>();
        r.trials = j.at("trials").get<std::uint64_t>();
        r.successes = j.at("successes").get<std::uint64_t>();
        r.estimate = j.at("estimate").get<double>();
        r.standardError = j.at("stderr").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        out.push_back(std::move(r));
    }
    return out;
}

void write_records(const std::vector<EstimateRecord>& records, const std::filesystem::path& path,
                   RecordFormat format) {
    const std::string body = render_records(records, format);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << body;
        out.flush();
        if (!out) throw IoError("failed while writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

}  // namespace bootlab
