#include "qgeom/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <mutex>

namespace qgeom {

GaussRule gauss_legendre(int count) {
    if (count < 1) throw DomainError("gauss_legendre: need at least one node");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(count);
    if (it != cache.end()) return it->second;
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(size_t(count));
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    for (int i = 0; i < count; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, size_t(i), &rule.nodes[i], &rule.weights[i], table);
    gsl_integration_glfixed_table_free(table);
    cache.emplace(count, rule);
    return rule;
}

}  // namespace qgeom
