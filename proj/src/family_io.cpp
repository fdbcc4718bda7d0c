#include "fifam/family_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fifam {

std::string family_to_text(const Family& family) {
    std::ostringstream out;
    out << "n=" << family.n() << " r=" << family.r() << " theta=" << family.theta().str() << "\n";
    for (const ElementSet& s : family.sets()) {
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out << ' ';
            out << e;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace

Family family_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    int n = 0, r = 0;
    std::optional<Fraction> theta;
    bool header_seen = false;
    std::vector<ElementSet> sets;

    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (blank(line)) continue;

        if (!header_seen) {
            std::istringstream hdr(line);
            std::string token;
            while (hdr >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected key=value in header, got '" + token + "'", lineno);
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                try {
                    if (key == "n") n = std::stoi(value);
                    else if (key == "r") r = std::stoi(value);
                    else if (key == "theta") theta = Fraction::parse(value);
                    else throw ParseError("unknown header key '" + key + "'", lineno);
                } catch (const ParseError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw ParseError(std::string("bad header value: ") + e.what(), lineno);
                }
            }
            if (n <= 0 || r <= 0 || !theta)
                throw ParseError("header must define n, r and theta", lineno);
            header_seen = true;
            continue;
        }

        std::istringstream row(line);
        std::vector<int> elems;
        long long v;
        while (row >> v) {
            if (v < 1 || v > n)
                throw ParseError("element " + std::to_string(v) + " outside [1, " +
                                     std::to_string(n) + "]",
                                 lineno);
            elems.push_back(static_cast<int>(v));
        }
        if (!row.eof())
            throw ParseError("non-integer token in set line", lineno);
        if (elems.empty()) throw ParseError("empty set line", lineno);
        sets.push_back(ElementSet::from_elements(elems));
    }

    if (!header_seen) throw ParseError("missing header line", lineno == 0 ? 1 : lineno);
    try {
        return Family(n, r, *theta, std::move(sets));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

std::string family_to_json(const Family& family) {
    nlohmann::json doc;
    doc["n"] = family.n();
    doc["r"] = family.r();
    doc["theta"] = {{"a", family.theta().num()}, {"b", family.theta().den()}};
    auto& sets = doc["sets"] = nlohmann::json::array();
    for (const ElementSet& s : family.sets()) sets.push_back(s.elements());
    return doc.dump(2) + "\n";
}

Family family_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    try {
        const int n = doc.at("n").get<int>();
        const int r = doc.at("r").get<int>();
        const auto theta = Fraction(doc.at("theta").at("a").get<std::int64_t>(),
                                    doc.at("theta").at("b").get<std::int64_t>());
        std::vector<ElementSet> sets;
        for (const auto& row : doc.at("sets")) {
            std::vector<int> elems;
            for (const auto& e : row) {
                const int v = e.get<int>();
                if (v < 1 || v > n)
                    throw ParseError("element " + std::to_string(v) + " outside [1, " +
                                         std::to_string(n) + "]",
                                     0);
                elems.push_back(v);
            }
            sets.push_back(ElementSet::from_elements(elems));
        }
        return Family(n, r, theta, std::move(sets));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

Family load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return family_from_json(text);
    return family_from_text(text);
}

void save_family(const Family& family, const std::string& path, bool structured) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << (structured ? family_to_json(family) : family_to_text(family));
}

} // namespace fifam
