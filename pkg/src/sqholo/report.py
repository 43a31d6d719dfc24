"""Figure rendering for experiment summaries (MSE left, SSIM right)."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .experiments import summary_table  # noqa: E402

XLABELS = {
    "gs": "iteration",
    "sweep-sigma": r"band width $\sigma$",
    "sweep-levels": "modulation levels",
}


def plot_summary(result, path):
    """Render mean +/- 2 std per variant and save to ``path`` (format from suffix)."""
    kind = result.spec.kind
    table = summary_table(result)
    plt.rcParams["svg.hashsalt"] = "sqholo"  # stable element ids between runs
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
    for ax, metric, label in zip(axes, ("mse", "ssim"), ("MSE", "SSIM")):
        for i, (variant, points) in enumerate(table.items()):
            keys = sorted(points, key=lambda k: (k[0] or 0, k[1]))
            means = [points[k][metric][0] for k in keys]
            errs = [points[k][metric][1] for k in keys]
            if kind == "gs":
                xs = [k[1] for k in keys]
            elif kind in ("sweep-sigma", "sweep-levels"):
                xs = [k[0] for k in keys]
            else:
                ax.bar(i, means[0], yerr=errs[0], capsize=4, label=variant)
                continue
            ax.errorbar(xs, means, yerr=errs, marker="o", ms=3, capsize=3, label=variant)
        if kind in ("sweep-sigma", "sweep-levels"):
            ax.set_xscale("log", base=2 if kind == "sweep-levels" else 10)
        if kind in XLABELS:
            ax.set_xlabel(XLABELS[kind])
        else:
            ax.set_xticks(range(len(table)), list(table), rotation=15)
        ax.set_ylabel(label)
    axes[0].legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)
    return path
