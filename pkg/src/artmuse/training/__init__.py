from .adam import AdamState, adam_step, trainable_layers
from .schedule import ScheduleConfig, sgdr_cycle, sgdr_lr
from .range_test import (
    RangeTestDiverged,
    RangeTestResult,
    lr_range_test,
    lr_schedule,
    sweep,
)
from .finetune import (
    EarlyStopState,
    FineTunePlan,
    early_stop_update,
    make_finetune_plan,
)
from .loop import EpochRecord, TrainHistory, TrainingDiverged, evaluate, train
