"""Over-the-air majority-vote computation on the zeros of Huffman polynomials."""

from .baselines import (
    GoldenbaumConfig,
    ObdaConfig,
    default_sequence_length,
    goldenbaum_decode,
    goldenbaum_encode,
    obda_decode,
    obda_encode,
)
from .channel import PdpConfig, pdp, sample_channel, superpose
from .decoding import (
    CountEstimates,
    DecoderContext,
    channel_power,
    decode,
    decode_differential,
    decode_indexed,
    decode_uncoded,
    estimate_counts,
    noise_power,
    signal_scale,
    signal_scale_differential,
    signal_scale_indexed,
    signal_scale_uncoded,
)
from .encoding import (
    Method,
    encode,
    encode_differential,
    encode_indexed,
    encode_uncoded,
    votes_to_bits,
)
from .huffman import (
    RadiusParam,
    ZeroCodeword,
    aacf,
    leading_coeff,
    poly_eval,
    radius_param,
    synthesize_coeffs,
    zeros_to_coeffs,
    zeros_to_coeffs_iterative,
)
from .median import MedianState, local_votes, median_step, run_median
from .theory import (
    CerEstimate,
    CerModel,
    ExpRateSet,
    IntegrationError,
    cdf_diff_exp_sums,
    cer,
    detection_rates,
    rates_coded,
    rates_uncoded,
    vote_averaged_cer,
)
from .waveform import (
    dfts_ofdm_modulate,
    ofdm_map_modulate,
    pmepr,
    resources_per_mv,
    separation_resources,
)

__version__ = "0.1.0"
