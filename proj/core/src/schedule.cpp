#include "mlcomp/schedule.hpp"

#include <sstream>

#include "mlcomp/types.hpp"

namespace mlcomp {

std::string schedule_to_text(const Schedule& sched) {
    std::ostringstream out;
    out << "schedule m=" << sched.m << "\n";
    std::size_t b = 0;
    for (std::size_t i = 0; i < sched.steps.size(); ++i) {
        const Step& s = sched.steps[i];
        switch (s.kind) {
            case Step::Kind::Update: out << "u " << s.reg << "\n"; break;
            case Step::Kind::Parallel: out << "P\n"; break;
            case Step::Kind::Last: out << "L\n"; break;
        }
        while (b < sched.boundaries.size() && sched.boundaries[b].after_step == i + 1) {
            out << "# boundary " << sched.boundaries[b].id << "\n";
            ++b;
        }
    }
    return out.str();
}

Schedule parse_schedule_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Schedule sched;
    bool seen_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "#") {
            std::string what;
            ls >> what;
            if (what == "boundary") {
                int id = 0;
                if (!(ls >> id)) throw parse_error("boundary without id", lineno);
                sched.boundaries.push_back({sched.steps.size(), id, Transformation()});
            }
            continue;  // other comments are ignored
        }
        if (tag == "schedule") {
            std::string tm;
            if (!(ls >> tm) || tm.rfind("m=", 0) != 0)
                throw parse_error("malformed schedule header", lineno);
            sched.m = std::stoi(tm.substr(2));
            seen_header = true;
        } else if (tag == "u") {
            int reg = 0;
            if (!(ls >> reg) || reg < 1)
                throw parse_error("update step needs a register", lineno);
            sched.push(Step::update(reg));
        } else if (tag == "P") {
            sched.push(Step::parallel());
        } else if (tag == "L") {
            sched.push(Step::last());
        } else {
            throw parse_error("unknown step '" + tag + "'", lineno);
        }
    }
    if (!seen_header) throw parse_error("missing schedule header", 1);
    return sched;
}

}  // namespace mlcomp
