#include "lenskein/diagram_io.hpp"

#include <fstream>
#include <sstream>

namespace lenskein {

std::string serialize_diagram(const GridDiagram& d) {
    std::ostringstream out;
    out << "lens " << d.lens().p << ' ' << d.lens().q << '\n';
    out << "grid " << d.n() << '\n';
    for (const Cell& c : d.os()) out << "O " << c.x << ' ' << c.y << '\n';
    for (const Cell& c : d.xs()) out << "X " << c.x << ' ' << c.y << '\n';
    return out.str();
}

GridDiagram parse_diagram(std::istream& in) {
    LensParams lens{};
    int n = -1;
    bool have_lens = false, have_grid = false;
    std::vector<Cell> os, xs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& why) {
            throw Error(Errc::ParseError,
                        "line " + std::to_string(lineno) + ": " + why);
        };
        if (tok == "lens") {
            if (have_lens) fail("duplicate lens header");
            if (!(ls >> lens.p >> lens.q)) fail("lens header needs P Q");
            have_lens = true;
        } else if (tok == "grid") {
            if (have_grid) fail("duplicate grid header");
            if (!(ls >> n) || n < 1) fail("grid header needs N >= 1");
            have_grid = true;
        } else if (tok == "O" || tok == "X") {
            if (!have_lens || !have_grid) fail("marking before lens/grid headers");
            Cell c;
            if (!(ls >> c.x >> c.y)) fail("marking needs X_COORD Y_COORD");
            (tok == "O" ? os : xs).push_back(c);
        } else {
            fail("unknown directive '" + tok + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing tokens");
    }
    if (!have_lens || !have_grid) throw Error(Errc::ParseError, "missing lens/grid headers");
    if (static_cast<int>(os.size()) != n || static_cast<int>(xs.size()) != n)
        throw Error(Errc::ParseError, "expected exactly N lines for each marking type");
    return GridDiagram(lens, n, std::move(os), std::move(xs));
}

GridDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    return parse_diagram(in);
}

GridDiagram load_diagram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    GridDiagram d = parse_diagram(in);
    ValidityReport report = validate(d);
    if (!report.ok()) throw Error(Errc::ParseError, report.message);
    return d;
}

}  // namespace lenskein
