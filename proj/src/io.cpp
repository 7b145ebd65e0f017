#include "loopgas/io.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "loopgas/errors.hpp"

namespace loopgas {

namespace {

// recursive-descent parser: expr := term (('+'|'-') term)*,
// term := factor (('*'|'/') factor)*, factor := unary ('^' factor)?,
// unary := '-' unary | atom, atom := number | pi | sqrt '(' expr ')' | '(' expr ')'
// juxtaposition like "3pi" multiplies
struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool peek_atom() {
        skip();
        if (i >= s.size()) return false;
        char c = s[i];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else if (peek_atom())
                v *= factor();  // juxtaposition
            else
                return v;
        }
    }
    double factor() {
        double v = unary();
        if (eat('^')) v = std::pow(v, factor());
        return v;
    }
    double unary() {
        if (eat('-')) return -unary();
        return atom();
    }
    double atom() {
        skip();
        if (i >= s.size()) throw ConfigError("parse_numeric: unexpected end in '" + s + "'");
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' ||
                    s[j] == 'e' || s[j] == 'E' ||
                    ((s[j] == '+' || s[j] == '-') && j > i && (s[j - 1] == 'e' || s[j - 1] == 'E'))))
                ++j;
            double v = std::stod(s.substr(i, j - i));
            i = j;
            return v;
        }
        if (s.compare(i, 2, "pi") == 0) {
            i += 2;
            return std::numbers::pi;
        }
        if (s.compare(i, 4, "sqrt") == 0) {
            i += 4;
            if (!eat('(')) throw ConfigError("parse_numeric: sqrt needs '('");
            double v = expr();
            if (!eat(')')) throw ConfigError("parse_numeric: missing ')'");
            return std::sqrt(v);
        }
        if (c == '(') {
            ++i;
            double v = expr();
            if (!eat(')')) throw ConfigError("parse_numeric: missing ')'");
            return v;
        }
        throw ConfigError("parse_numeric: cannot parse '" + s + "' at position " +
                          std::to_string(i));
    }
};

}  // namespace

double parse_numeric(const std::string& expr) {
    Parser p(expr);
    double v = p.expr();
    p.skip();
    if (p.i != expr.size())
        throw ConfigError("parse_numeric: trailing characters in '" + expr + "'");
    return v;
}

std::string RunManifest::core_json() const {
    std::ostringstream os;
    os << "{\"tool\":\"loopgas\",\"version\":\"" << kToolVersion << "\",\"subcommand\":\""
       << subcommand << "\",\"params\":" << (params_json.empty() ? "null" : params_json)
       << ",\"flags\":\"" << flags << "\",\"seed\":" << master_seed
       << ",\"replicas\":" << replicas << ",\"seed_rule\":\"splitmix64(master,index)\"";
    if (!cache_files.empty()) {
        os << ",\"cache_files\":[";
        for (size_t i = 0; i < cache_files.size(); ++i)
            os << (i ? "," : "") << "\"" << cache_files[i] << "\"";
        os << "]";
    }
    os << "}";
    return os.str();
}

std::string RunManifest::full_json() const {
    std::string core = core_json();
    std::ostringstream os;
    os << core.substr(0, core.size() - 1) << ",\"wall_seconds\":" << wall_seconds << "}";
    return os.str();
}

void parallel_replicas(int64_t n, uint64_t master_seed, int threads,
                       const std::function<void(int64_t, Rng&)>& f) {
    if (threads <= 1) {
        for (int64_t i = 0; i < n; ++i) {
            Rng rng = replica_stream(master_seed, static_cast<uint64_t>(i));
            f(i, rng);
        }
        return;
    }
    std::atomic<int64_t> next{0};
    std::exception_ptr err = nullptr;
    std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            int64_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                Rng rng = replica_stream(master_seed, static_cast<uint64_t>(i));
                f(i, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 2;
}

void write_lines(const std::string& path, const RunManifest& m,
                 const std::vector<std::string>& lines) {
    std::ofstream os(path);
    if (!os) throw ConfigError("write_lines: cannot open " + path);
    os << "# " << m.core_json() << "\n";
    for (const auto& l : lines) os << l << "\n";
}

uint64_t fnv1a_file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("fnv1a_file_hash: cannot open " + path);
    uint64_t h = 1469598103934665603ULL;
    char buf[65536];
    while (is.read(buf, sizeof(buf)) || is.gcount()) {
        for (std::streamsize i = 0; i < is.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

}  // namespace loopgas
