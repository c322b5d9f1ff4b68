#include "dynmatch/sequence_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dynmatch {

namespace {

[[noreturn]] void parse_fail(long long line, const std::string& why) {
    std::ostringstream o;
    o << "sequence parse error at line " << line << ": " << why;
    throw std::runtime_error(o.str());
}

}  // namespace

std::string sequence_to_string(const Workload& w) {
    std::ostringstream o;
    o << "n " << w.n << "\n";
    for (const UpdateEvent& e : w.events)
        o << (e.kind == UpdateEvent::Insert ? '+' : '-') << ' ' << e.u << ' ' << e.v << '\n';
    return o.str();
}

Workload sequence_from_string(const std::string& text) {
    std::istringstream in(text);
    Workload w;
    std::string line;
    long long lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) parse_fail(lineno, "empty line");
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag >> w.n) || tag != "n" || w.n < 1)
                parse_fail(lineno, "expected header 'n <N>'");
            have_header = true;
        } else {
            char op;
            VertexId u, v;
            if (!(ls >> op >> u >> v) || (op != '+' && op != '-'))
                parse_fail(lineno, "expected '+ u v' or '- u v'");
            if (u < 0 || v < 0 || u >= w.n || v >= w.n || u == v)
                parse_fail(lineno, "vertex ids out of range");
            w.events.push_back({op == '+' ? UpdateEvent::Insert : UpdateEvent::Delete, u, v});
        }
        std::string rest;
        if (ls >> rest) parse_fail(lineno, "trailing content");
    }
    if (!have_header) parse_fail(1, "missing header");
    return w;
}

void write_sequence_file(const std::string& path, const Workload& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << sequence_to_string(w);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Workload read_sequence_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sequence_from_string(buf.str());
}

}  // namespace dynmatch
