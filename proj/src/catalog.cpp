#include "ghl/catalog.hpp"

#include <numeric>
#include <sstream>
#include <fstream>

namespace ghl {

namespace {

// name  degrees  lie_dim  chars
// chars: all | zero-only | exclude:p,q
const char* kBuiltin = R"(
SU(2)  4          3   all
SU(3)  4,6        8   all
SU(4)  4,6,8      15  all
SU(5)  4,6,8,10   24  all
U(1)   2          1   all
U(2)   2,4        4   all
U(3)   2,4,6      9   all
U(4)   2,4,6,8    16  all
Sp(1)  4          3   all
Sp(2)  4,8        10  all
Sp(3)  4,8,12     21  all
SO(3)  4          3   exclude:2
SO(5)  4,8        10  exclude:2
SO(7)  4,8,12     21  exclude:2
G2     4,12       14  zero-only
)";

std::vector<int> parse_degrees(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(item));
    return out;
}

}  // namespace

bool CharPolicy::allows(unsigned p) const {
    switch (kind) {
        case Kind::All:
            return true;
        case Kind::ZeroOnly:
            return p == 0;
        case Kind::Exclude:
            for (unsigned q : excluded)
                if (q == p) return false;
            return true;
    }
    return false;
}

std::string CharPolicy::str() const {
    switch (kind) {
        case Kind::All:
            return "all";
        case Kind::ZeroOnly:
            return "zero-only";
        case Kind::Exclude: {
            std::string s = "exclude:";
            for (size_t i = 0; i < excluded.size(); ++i)
                s += (i ? "," : "") + std::to_string(excluded[i]);
            return s;
        }
    }
    return "all";
}

CharPolicy CharPolicy::parse(const std::string& s) {
    CharPolicy p;
    if (s == "all") {
        p.kind = Kind::All;
    } else if (s == "zero-only") {
        p.kind = Kind::ZeroOnly;
    } else if (s.rfind("exclude:", 0) == 0) {
        p.kind = Kind::Exclude;
        std::stringstream ss(s.substr(8));
        std::string item;
        while (std::getline(ss, item, ',')) p.excluded.push_back((unsigned)std::stoul(item));
    } else {
        throw catalog_error("bad characteristic policy: " + s);
    }
    return p;
}

const Catalog& Catalog::builtin() {
    static Catalog c = Catalog::parse(kBuiltin);
    return c;
}

Catalog Catalog::parse(const std::string& text) {
    Catalog c;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ls(line);
        std::string name, degs, dim, chars;
        if (!(ls >> name)) continue;
        if (!(ls >> degs >> dim >> chars))
            throw catalog_error("bad catalog record: " + line);
        SpaceModel m;
        m.name = name;
        m.degrees = parse_degrees(degs);
        m.lie_dim = std::stoi(dim);
        m.chars = CharPolicy::parse(chars);
        c.entries_.push_back(std::move(m));
    }
    c.validate();
    return c;
}

Catalog Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catalog_error("cannot open catalog file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void Catalog::validate() const {
    for (const auto& m : entries_) {
        if (m.degrees.empty()) throw catalog_error(m.name + ": no generator degrees");
        int d = 0;
        for (int deg : m.degrees) {
            if (deg < 2 || deg % 2 != 0)
                throw catalog_error(m.name + ": generator degrees must be even and >= 2");
            d += deg - 1;
        }
        // independent consistency oracle: dim G = sum (deg x_i - 1)
        if (d != m.lie_dim)
            throw catalog_error(m.name + ": lie_dim " + std::to_string(m.lie_dim) +
                                " does not match sum(deg - 1) = " + std::to_string(d));
    }
}

const SpaceModel* Catalog::find(const std::string& name) const {
    for (const auto& m : entries_)
        if (m.name == name) return &m;
    return nullptr;
}

const SpaceModel& Catalog::lookup(const std::string& name, const FieldSpec& field) const {
    const SpaceModel* m = find(name);
    if (!m) throw catalog_error("unknown group: " + name);
    if (!m->chars.allows(field.characteristic()))
        throw catalog_error(name + ": H^*(BG) is not polynomial over " + field.name() +
                            " (allowed: " + m->chars.str() + ")");
    return *m;
}

}  // namespace ghl
