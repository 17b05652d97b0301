'''
THIS MODULE DRAWS A TRACED BIFURCATION CURVE AS A STATIC SVG IMAGE.
lambda IS ON THE HORIZONTAL AXIS AND alpha = max u ON THE VERTICAL AXIS.
THE OUTPUT IS DETERMINISTIC: THE SAME TRACE GIVES THE SAME FILE.
'''
## DEPENDENCIES
# EXTERNAL LIBRARY DEPENDENCIES
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

## TYPE HINTS
from custom_types import file_path
from custom_types import CurveTrace
from custom_types import Landmarks


# write the curve, the start point and any interior minimum to an svg file
def write_trace_svg (
        curve:      CurveTrace,
        path:       file_path,
        lm:         Landmarks = None,
        title:      str = None,
                    ):

    lam = [point.lam for point in curve.points]
    alpha = [point.alpha for point in curve.points]

    with plt.rc_context({"svg.hashsalt": "spcurve", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        ax.plot(lam, alpha, color="#2c5282", lw=1.5, label="S")

        if curve.min_point is not None:
            min_alpha, min_lam = curve.min_point
            ax.plot([min_lam], [min_alpha], marker="o", ls="none", color="#c53030", label=f"min lambda = {min_lam:.6g}")
        if lm is not None and lm.eta is not None:
            ax.axhline(lm.eta, color="grey", ls=":", lw=0.8, label=f"eta = {lm.eta:.6g}")

        ax.set_xlabel("lambda")
        ax.set_ylabel("alpha = max u")
        if title is not None:
            ax.set_title(title)
        ax.grid(True, ls=":", alpha=0.4)
        ax.legend(loc="best", fontsize=8)

        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
