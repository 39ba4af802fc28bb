#include "qgeom/engine.hpp"

namespace qgeom {

EngineMode parse_engine(const std::string& name) {
    if (name == "fd") return EngineMode::CentralFd;
    if (name == "dual") return EngineMode::Dual;
    throw std::invalid_argument("unknown engine: " + name);
}

std::string engine_name(EngineMode m) { return m == EngineMode::CentralFd ? "fd" : "dual"; }

}  // namespace qgeom
