#include <stdio.h>
#include <string.h>

#include "coxline.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        CoxlineStatus st_ = (call);                                        \
        if (st_ != COXLINE_STATUS_OK) {                                    \
            const char *msg_ = coxline_last_error_message();               \
            fprintf(stderr, "%s: %d %s\n", #call, (int)st_, msg_ ? msg_ : ""); \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    CoxlineConfig *cfg = NULL;
    CHECK(coxline_config_default(3, &cfg));

    const int64_t cubic[] = {3, 1, 1, 1};
    int64_t h0 = 0;
    size_t rank = 0;
    CHECK(coxline_h0(cubic, 4, &h0));
    CHECK(coxline_h0_rank(cfg, cubic, 4, &rank));
    if (h0 != 7 || rank != 7) {
        fprintf(stderr, "h0 %lld, rank %zu\n", (long long)h0, rank);
        return 1;
    }

    char *json = NULL;
    CHECK(coxline_relations_json(cfg, &json));
    if (strstr(json, "\"relation_count\":1") == NULL) {
        fprintf(stderr, "unexpected relations: %s\n", json);
        return 1;
    }
    coxline_string_free(json);

    const int64_t not_nef[] = {0, -1, 0, 0};
    int64_t count = 0;
    if (coxline_standard_monomial_count_closed_form(not_nef, 4, &count) != COXLINE_STATUS_DOMAIN) {
        return 1;
    }

    coxline_config_free(cfg);
    printf("ok %s\n", coxline_version());
    return 0;
}
