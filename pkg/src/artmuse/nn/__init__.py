from .layers import (
    ShapeError,
    batchnorm_backward,
    batchnorm_forward,
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    relu_backward,
    relu_forward,
    softmax,
    softmax_cross_entropy,
)
from .model import (
    LayerSpec,
    ModelSpec,
    build_baseline_model,
    check_params,
    infer_shapes,
    init_params,
    loss_from_cache,
    model_backward,
    model_forward,
    param_shapes,
    predictions,
)
from .gradcheck import gradient_check
from .checkpoint import (
    CheckpointError,
    CheckpointVersionError,
    load_checkpoint,
    save_checkpoint,
)
