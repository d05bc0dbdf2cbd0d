#include "sf/family.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sf {

bool SetFamily::contains(const Mask& m) const {
    return std::binary_search(members.begin(), members.end(), m,
                              [](const Mask& a, const Mask& b) { return lex_less(a, b); });
}

int SetFamily::max_member_size() const {
    int mx = 0;
    for (const auto& m : members) mx = std::max(mx, m.count());
    return mx;
}

int SetFamily::min_member_size() const {
    if (members.empty()) return 0;
    int mn = kMaxGround + 1;
    for (const auto& m : members) mn = std::min(mn, m.count());
    return mn;
}

SetFamily make_family(int n, std::vector<Mask> members) {
    if (n < 1 || n > kMaxGround)
        throw std::invalid_argument("ground set size out of range: " + std::to_string(n));
    Mask ground = Mask::full(n);
    for (const auto& m : members)
        if (!m.subset_of(ground))
            throw std::invalid_argument("member " + m.str() + " not contained in [1," +
                                        std::to_string(n) + "]");
    std::sort(members.begin(), members.end(),
              [](const Mask& a, const Mask& b) { return lex_less(a, b); });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SetFamily f;
    f.n = n;
    f.members = std::move(members);
    if (!f.members.empty()) {
        int k = f.members[0].count();
        bool all = std::all_of(f.members.begin(), f.members.end(),
                               [k](const Mask& m) { return m.count() == k; });
        if (all) f.uniform = k;
    }
    return f;
}

SetFamily complete_family(int n, int k) {
    std::vector<Mask> out;
    for_each_ksubset(n, k, [&](const Mask& m) { out.push_back(m); });
    return make_family(n, std::move(out));
}

SetFamily restrict_family(const SetFamily& f, const Mask& x) {
    std::vector<Mask> out;
    for (const auto& m : f.members)
        if (x.subset_of(m)) out.push_back(m - x);
    return make_family(f.n, std::move(out));
}

SetFamily star(const SetFamily& f, const Mask& x) {
    std::vector<Mask> out;
    for (const auto& m : f.members)
        if (x.subset_of(m)) out.push_back(m);
    return make_family(f.n, std::move(out));
}

SetFamily slice(const SetFamily& f, const Mask& x, const Mask& y, bool keep_x) {
    if (!x.subset_of(y)) throw std::invalid_argument("slice requires X subset Y");
    std::vector<Mask> out;
    for (const auto& m : f.members)
        if ((m & y) == x) out.push_back(keep_x ? m : m - x);
    return make_family(f.n, std::move(out));
}

SetFamily generated_family(const SetFamily& s, int k, std::uint64_t cap) {
    if (k < 0 || k > s.n)
        throw std::invalid_argument("uniformity k out of range");
    for (const auto& m : s.members)
        if (m.count() > k)
            throw std::invalid_argument("generator " + m.str() + " larger than k");
    // C(n,k) against cap, computed without overflow.
    long double est = 1.0L;
    for (int i = 1; i <= k; ++i) est = est * (s.n - k + i) / i;
    if (est > static_cast<long double>(cap))
        throw std::runtime_error("enumeration cap exceeded: C(" + std::to_string(s.n) +
                                 "," + std::to_string(k) + ") > " + std::to_string(cap));
    std::vector<Mask> out;
    for_each_ksubset(s.n, k, [&](const Mask& m) {
        for (const auto& g : s.members)
            if (g.subset_of(m)) {
                out.push_back(m);
                break;
            }
    });
    return make_family(s.n, std::move(out));
}

bool is_antichain(const SetFamily& f) {
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = 0; j < f.members.size(); ++j)
            if (i != j && f.members[i].subset_of(f.members[j])) return false;
    return true;
}

SetFamily minimal_members(const SetFamily& f) {
    std::vector<Mask> out;
    for (const auto& m : f.members) {
        bool minimal = true;
        for (const auto& o : f.members)
            if (o != m && o.subset_of(m)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(m);
    }
    return make_family(f.n, std::move(out));
}

SetFamily shift_family(const SetFamily& f, int i, int j) {
    if (i == j) throw std::invalid_argument("shift needs distinct elements");
    if (i < 1 || i > f.n || j < 1 || j > f.n)
        throw std::invalid_argument("shift element outside ground set");
    std::vector<Mask> out;
    for (const auto& m : f.members) {
        if (m.test(j) && !m.test(i)) {
            Mask moved = m;
            moved.reset(j);
            moved.set(i);
            out.push_back(f.contains(moved) ? m : moved);
        } else {
            out.push_back(m);
        }
    }
    return make_family(f.n, std::move(out));
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw std::invalid_argument("family parse error at line " + std::to_string(line) +
                                ": " + what);
}

}  // namespace

SetFamily parse_family_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int n = -1;
    std::vector<Mask> members;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto is_blank = [](const std::string& s) {
            return std::all_of(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); });
        };
        if (is_blank(line)) continue;
        if (n < 0) {
            auto eq = line.find('=');
            std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
            key.erase(std::remove_if(key.begin(), key.end(),
                                     [](unsigned char c) { return std::isspace(c); }),
                      key.end());
            if (eq == std::string::npos || key != "n")
                parse_fail(lineno, "expected header 'n=<int>'");
            try {
                n = std::stoi(line.substr(eq + 1));
            } catch (const std::exception&) {
                parse_fail(lineno, "bad integer in header");
            }
            if (n < 1 || n > kMaxGround) parse_fail(lineno, "n out of range");
            continue;
        }
        std::istringstream ls(line);
        Mask m;
        int e;
        while (ls >> e) {
            if (e < 1 || e > n) parse_fail(lineno, "element " + std::to_string(e) +
                                                     " outside [1," + std::to_string(n) + "]");
            if (m.test(e)) parse_fail(lineno, "repeated element " + std::to_string(e));
            m.set(e);
        }
        if (!ls.eof()) parse_fail(lineno, "non-integer token");
        members.push_back(m);
    }
    if (n < 0) throw std::invalid_argument("family parse error: missing 'n=<int>' header");
    return make_family(n, std::move(members));
}

std::string serialize_family_text(const SetFamily& f) {
    std::ostringstream out;
    out << "n=" << f.n << "\n";
    for (const auto& m : f.members) {
        bool first = true;
        for (int e : m.elements()) {
            if (!first) out << ' ';
            out << e;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

SetFamily parse_family_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("family JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
        throw std::invalid_argument("family JSON needs fields 'n' and 'sets'");
    int n = j.at("n").get<int>();
    std::vector<Mask> members;
    for (const auto& arr : j.at("sets")) {
        Mask m;
        for (const auto& v : arr) {
            int e = v.get<int>();
            if (e < 1 || e > n)
                throw std::invalid_argument("family JSON element outside ground set");
            m.set(e);
        }
        members.push_back(m);
    }
    return make_family(n, std::move(members));
}

std::string serialize_family_json(const SetFamily& f) {
    nlohmann::json j;
    j["n"] = f.n;
    auto& sets = j["sets"] = nlohmann::json::array();
    for (const auto& m : f.members) sets.push_back(m.elements());
    return j.dump();
}

SetFamily parse_family(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_family_json(text) : parse_family_text(text);
    }
    throw std::invalid_argument("empty family input");
}

}  // namespace sf
