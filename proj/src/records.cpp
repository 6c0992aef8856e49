#include "perc/records.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace perc {

std::string model_name(ModelKind kind) {
    return kind == ModelKind::square_bond ? "square-bond" : "triangular-site";
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format: " + name);
}

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

namespace {

const char* const kHeader = "model,p,n,trials,seed,statistic,mean,stderr,count";

std::vector<std::string> extra_columns(
    const std::vector<ResultRecord>& records) {
    std::vector<std::string> columns;
    for (const ResultRecord& r : records)
        for (const auto& [key, value] : r.extra)
            if (std::find(columns.begin(), columns.end(), key) ==
                columns.end())
                columns.push_back(key);
    return columns;
}

std::string extra_value(const ResultRecord& r, const std::string& key) {
    for (const auto& [k, v] : r.extra)
        if (k == key) return v;
    return "";
}

}  // namespace

void emit(const std::vector<ResultRecord>& records, OutputFormat format,
          std::ostream& out) {
    if (records.empty())
        throw std::invalid_argument("refusing to emit zero records");
    const auto columns = extra_columns(records);

    if (format == OutputFormat::csv) {
        out << kHeader;
        for (const std::string& c : columns) out << ',' << c;
        out << '\n';
        for (const ResultRecord& r : records) {
            out << r.model << ',' << format_double(r.p) << ',' << r.n << ','
                << r.trials << ',' << r.seed << ',' << r.statistic << ','
                << format_double(r.mean) << ',' << format_double(r.stderror)
                << ',' << r.count;
            for (const std::string& c : columns) out << ',' << extra_value(r, c);
            out << '\n';
        }
        return;
    }

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResultRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["model"] = r.model;
        obj["p"] = r.p;
        obj["n"] = r.n;
        obj["trials"] = r.trials;
        obj["seed"] = r.seed;
        obj["statistic"] = r.statistic;
        obj["mean"] = r.mean;
        obj["stderr"] = r.stderror;
        obj["count"] = r.count;
        for (const std::string& c : columns) {
            std::string v = extra_value(r, c);
            if (!v.empty()) obj[c] = v;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

std::vector<ResultRecord> parse_csv_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty csv input");
    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream stream(s);
        while (std::getline(stream, field, ',')) fields.push_back(field);
        if (!s.empty() && s.back() == ',') fields.push_back("");
        return fields;
    };
    const auto header = split(line);
    const std::vector<std::string> core = {"model", "p",      "n",
                                           "trials", "seed",  "statistic",
                                           "mean",  "stderr", "count"};
    if (header.size() < core.size())
        throw std::runtime_error("csv header too short");
    for (std::size_t i = 0; i < core.size(); ++i)
        if (header[i] != core[i])
            throw std::runtime_error("unexpected csv header column: " +
                                     header[i]);

    std::vector<ResultRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() < core.size())
            throw std::runtime_error("short csv row: " + line);
        ResultRecord r;
        r.model = fields[0];
        r.p = std::stod(fields[1]);
        r.n = std::stol(fields[2]);
        r.trials = std::stol(fields[3]);
        r.seed = std::stoull(fields[4]);
        r.statistic = fields[5];
        r.mean = std::stod(fields[6]);
        r.stderror = std::stod(fields[7]);
        r.count = std::stol(fields[8]);
        for (std::size_t i = core.size();
             i < fields.size() && i < header.size(); ++i)
            if (!fields[i].empty()) r.extra.emplace_back(header[i], fields[i]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace perc
