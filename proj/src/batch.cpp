#include "csurf/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csurf {

namespace {

BatchItem classify_one(const IsolatingBlock& b) {
    BatchItem item;
    item.name = b.name;
    try {
        ClassificationReport r = classify(b);
        item.ok = true;
        item.report_json = report_to_json_string(r);
        item.report_text = report_to_text(r, false);
    } catch (const Error& e) {
        item.error = e.what();
        item.error_code = e.code_name();
    } catch (const std::exception& e) {
        item.error = e.what();
        item.error_code = "Internal";
    }
    return item;
}

} // namespace

std::vector<BatchItem> classify_batch(const std::vector<IsolatingBlock>& blocks, int jobs) {
    std::vector<BatchItem> items(blocks.size());
#ifdef _OPENMP
    if (jobs <= 0) jobs = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long long i = 0; i < (long long)blocks.size(); ++i)
        items[(std::size_t)i] = classify_one(blocks[(std::size_t)i]);
#else
    (void)jobs;
    for (std::size_t i = 0; i < blocks.size(); ++i) items[i] = classify_one(blocks[i]);
#endif
    return items;
}

std::vector<BatchItem> classify_batch_serial(const std::vector<IsolatingBlock>& blocks) {
    std::vector<BatchItem> items(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) items[i] = classify_one(blocks[i]);
    return items;
}

} // namespace csurf
