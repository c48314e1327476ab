from .metrics import ConfusionMatrix, accuracy
from .ttest import TTestResult, betainc_regularized, paired_t_test
from .session import (
    ARTWORK_CONDITIONS,
    CONDITIONS,
    PHOTO_CONDITIONS,
    PoolError,
    SessionItem,
    SessionPlan,
    build_session,
    check_plan,
    image_id_for,
)
from .ratings import (
    RatingRecord,
    RatingStore,
    export_records,
    import_records,
    record_from_json,
    record_to_json,
)
from .mos import (
    CONDITION_COLUMN,
    MOSReport,
    mos,
    per_subject_column_means,
    study_t_tests,
    t_tests_to_text,
)
from .service import create_study_app
