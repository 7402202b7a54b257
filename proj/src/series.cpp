#include "adlab/series.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adlab/errors.hpp"

namespace adlab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int TimeSeries::p_index(double p) const {
    for (std::size_t j = 0; j < p_list.size(); ++j)
        if (p_list[j] == p) return static_cast<int>(j);
    return -1;
}

ScalarSeries TimeSeries::series_of(const std::string& column) const {
    const std::vector<double>* v = nullptr;
    if (column == "linf") v = &linf;
    else if (column == "mass") v = &mass;
    else if (column == "B") v = &B;
    else if (column == "beta") v = &beta;
    else if (column == "boundary_frac") v = &boundary_frac;
    else if (column.size() > 1 && column[0] == 'l') {
        const double p = std::strtod(column.c_str() + 1, nullptr);
        const int j = p_index(p);
        if (j >= 0) v = &lp[static_cast<std::size_t>(j)];
    }
    if (!v) throw ConfigError("unknown series column: " + column);
    return ScalarSeries{times, *v};
}

namespace {

std::string p_label(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "l%.17g", p);
    return buf;
}

}  // namespace

std::string to_csv(const TimeSeries& ts) {
    std::ostringstream os;
    os << "# adlab-series v1\n";
    os << "# config_hash=" << ts.meta.config_hash << "\n";
    os << "# scheme=" << ts.meta.scheme << "\n";
    os << "# grid=" << ts.meta.grid << "\n";
    os << "# contaminated=" << (ts.meta.contaminated ? 1 : 0) << "\n";
    os << "t";
    for (double p : ts.p_list) os << "," << p_label(p);
    os << ",linf,mass,B,beta,boundary_frac\n";
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        os << fmt17(ts.times[k]);
        for (const auto& col : ts.lp) os << "," << fmt17(col[k]);
        os << "," << fmt17(ts.linf[k]) << "," << fmt17(ts.mass[k]) << "," << fmt17(ts.B[k]) << ","
           << fmt17(ts.beta[k]) << "," << fmt17(ts.boundary_frac[k]) << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_num(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError("csv: malformed number '" + s + "'");
    return v;
}

}  // namespace

TimeSeries from_csv(const std::string& text) {
    TimeSeries ts;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    std::size_t n_cols = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::size_t key_start = line.find_first_not_of("# ");
            const std::string key = line.substr(key_start, eq - key_start);
            const std::string val = line.substr(eq + 1);
            if (key == "config_hash") ts.meta.config_hash = val;
            else if (key == "scheme") ts.meta.scheme = val;
            else if (key == "grid") ts.meta.grid = val;
            else if (key == "contaminated") ts.meta.contaminated = (val == "1");
            continue;
        }
        if (!header_seen) {
            const auto cols = split(line, ',');
            if (cols.size() < 6 || cols.front() != "t" || cols.back() != "boundary_frac")
                throw ConfigError("csv: unexpected header row: " + line);
            const std::size_t fixed = 5;  // linf,mass,B,beta,boundary_frac
            for (std::size_t j = 1; j + fixed < cols.size(); ++j) {
                if (cols[j].size() < 2 || cols[j][0] != 'l')
                    throw ConfigError("csv: unexpected norm column label: " + cols[j]);
                ts.p_list.push_back(parse_num(cols[j].substr(1)));
            }
            if (cols[ts.p_list.size() + 1] != "linf")
                throw ConfigError("csv: expected linf column after lp columns");
            ts.lp.assign(ts.p_list.size(), {});
            n_cols = cols.size();
            header_seen = true;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != n_cols) throw ConfigError("csv: row width mismatch: " + line);
        std::size_t j = 0;
        const double t = parse_num(cells[j++]);
        if (!ts.times.empty() && !(t > ts.times.back()))
            throw ConfigError("csv: sample times must be strictly increasing");
        ts.times.push_back(t);
        for (auto& col : ts.lp) col.push_back(parse_num(cells[j++]));
        ts.linf.push_back(parse_num(cells[j++]));
        ts.mass.push_back(parse_num(cells[j++]));
        ts.B.push_back(parse_num(cells[j++]));
        ts.beta.push_back(parse_num(cells[j++]));
        ts.boundary_frac.push_back(parse_num(cells[j++]));
    }
    if (!header_seen) throw ConfigError("csv: missing header row");
    return ts;
}

void write_csv(const std::string& path, const TimeSeries& ts) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f << to_csv(ts);
}

TimeSeries read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return from_csv(os.str());
}

}  // namespace adlab
