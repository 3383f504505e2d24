#include <iterroot/triangular_search.hpp>

#include <type_traits>

namespace iterroot {

namespace {

class Search {
  public:
    Search(unsigned long n, const RhsFn& rhs, const SearchOptions& opts) : n_(n), rhs_(rhs), opts_(opts) {}

    // Returns false once the cap is hit.
    bool run(TruncSeries& u, std::size_t k) {
        if (k > u.order()) {
            if (result_.solutions.size() >= opts_.cap) {
                result_.complete = false;
                return false;
            }
            result_.solutions.push_back(u);
            return true;
        }
        const RingElem rhs = rhs_(u, k);
        SolveOutcome outcome = solve_scalar(u.ctx(), n_, rhs, opts_.enum_bound);
        if (std::holds_alternative<SolveNone>(outcome)) {
            if (!result_.obstruction || k < result_.obstruction->index) {
                result_.obstruction = Obstruction{k, rhs};
            }
            return true;
        }
        if (auto* one = std::get_if<SolveUnique>(&outcome)) {
            u.set(k, one->x);
            const bool go_on = run(u, k + 1);
            u.set(k, u.ctx().zero());
            return go_on;
        }
        auto& many = std::get<SolveMany>(outcome);
        result_.branched = true;
        if (!many.complete || !opts_.branching) {
            result_.complete = false;
        }
        const std::size_t tries = opts_.branching ? many.solutions.size() : 1;
        for (std::size_t i = 0; i < tries; ++i) {
            u.set(k, many.solutions[i]);
            const bool go_on = run(u, k + 1);
            u.set(k, u.ctx().zero());
            if (!go_on) {
                return false;
            }
        }
        return true;
    }

    SearchResult take() { return std::move(result_); }

  private:
    unsigned long n_;
    const RhsFn& rhs_;
    const SearchOptions& opts_;
    SearchResult result_;
};

} // namespace

SearchResult solve_triangular(TruncSeries start, std::size_t first, unsigned long n, const RhsFn& rhs,
                              const SearchOptions& opts) {
    for (std::size_t k = first; k <= start.order(); ++k) {
        start.set(k, start.ctx().zero());
    }
    Search search(n, rhs, opts);
    search.run(start, first);
    return search.take();
}

} // namespace iterroot
