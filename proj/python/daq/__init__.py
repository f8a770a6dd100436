# Copyright 2026 The DAQ Authors
# SPDX-License-Identifier: Apache-2.0

"""Distribution-aware low-bit quantization, integer convolution pipelines and cost model."""

from ._daq import (
    DaqError,
    StepSizeTable,
    QuantizedFeature,
    QuantizedWeight,
    QQParams,
    cli,
    compare,
    conv_channelwise,
    conv_elementwise,
    conv_qq,
    conv_reference,
    cost_report,
    dequantize_feature,
    dequantize_weight,
    generate,
    max_relative_deviation,
    quantize_feature,
    quantize_qq,
    quantize_weight,
    read_tensor,
    relu,
    run_block,
    step_size,
    transform_overhead,
    with_channel_params,
    write_tensor,
)

__all__ = [name for name in dir() if not name.startswith("_")]
