# License: BSD 3 clause

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

import numpy as np


class Fig(object):
    def __init__(self, nrows=1, ncols=1, figsize=(6, 4)):
        self.fig = plt.figure(figsize=figsize)
        self._grid = plt.GridSpec(nrows, ncols)
        self._plot_widgets = []

    @property
    def plot_widgets(self):
        """List of the associated PlotWidget instances"""
        return tuple(self._plot_widgets)

    def __getitem__(self, idxs):
        """Get an axis"""
        pw = PlotWidget(self.fig.add_subplot(self._grid.__getitem__(idxs)))
        self._plot_widgets += [pw]
        return pw

    def savefig(self, path, dpi=100):
        self.fig.savefig(path, dpi=dpi, bbox_inches='tight')

    def close(self):
        plt.close(self.fig)


class PlotWidget(object):
    def __init__(self, parent):
        self.ax = parent

    @property
    def title(self):
        return self.ax.get_title()

    @title.setter
    def title(self, text):
        self.ax.set_title(text)

    def legend(self, loc='upper left'):
        self.ax.legend(loc=loc)

    def plot(self, x, y, width=2, color='k', label='', marker='', linestyle='-', alpha=1.):
        return self.ax.plot(x, y, c=color, lw=width, marker=marker, label=label, linestyle=linestyle, alpha=alpha)

    def semilogy(self, x, y, width=2, color='k', label=''):
        return self.ax.semilogy(x, y, c=color, lw=width, label=label)

    def grid(self, visible=True, which='both', alpha=1.):
        self.ax.grid(visible=visible, which=which, alpha=alpha)

    def axis(self, xmin, xmax, ymin, ymax, aspect=None):
        self.ax.set_xlim(xmin, xmax)
        self.ax.set_ylim(ymin, ymax)
        if aspect is not None:
            self.ax.set_aspect(aspect)

    def set_label(self, xlab, ylab):
        self.ax.set_xlabel(xlab)
        self.ax.set_ylabel(ylab)

    def image(self, data, extent=(0, 1, 0, 1), cmap='viridis', clim=[None, None]):
        # rows of imshow are the second axis
        image = self.ax.imshow(np.asarray(data).T, origin='lower', extent=extent,
                               vmin=clim[0], vmax=clim[1], cmap=cmap,
                               interpolation='nearest', aspect='auto')
        self.ax.figure.colorbar(image, ax=self.ax)
        return image


def plot_solution(u, path, title='u'):
    """
    save a picture of the grid function u in path:
    the profile for m = 1, the image for m = 2 and the profiles along
    every axis through the middle cell otherwise.
    """
    grid = u.grid
    fig = Fig()
    ax = fig[0]
    if grid.m == 1:
        ax.plot(grid.coords[0], u.values, color='navy', label=title)
        ax.set_label('$t_1$', title)
        ax.grid(alpha=0.3)
    elif grid.m == 2:
        ax.image(u.values)
        ax.set_label('$t_1$', '$t_2$')
    else:
        colors = plt.cm.viridis(np.linspace(0, 0.9, grid.m))
        for k in range(grid.m):
            t, v = u.line(k)
            ax.plot(t, v, color=colors[k], label='$t_{0:d}$'.format(k+1))
        ax.set_label('t', title)
        ax.legend()
        ax.grid(alpha=0.3)
    ax.title = title
    fig.savefig(path)
    fig.close()
    return path


def plot_histories(report, path):
    """
    save the residual and energy histories of a SolveReport in path.
    """
    fig = Fig(1, 2, figsize=(10, 4))
    ax = fig[0, 0]
    res = np.asarray(report.residual_history, dtype='f8')
    if res.size:
        ax.semilogy(np.arange(res.size), np.maximum(res, 1e-300), color='crimson')
    ax.set_label('iteration', 'residual')
    ax.grid(alpha=0.3)
    ax = fig[0, 1]
    ax.plot(np.arange(len(report.energy_history)), report.energy_history, color='navy', marker='.')
    ax.set_label('iteration', 'I(u)')
    ax.grid(alpha=0.3)
    fig.savefig(path)
    fig.close()
    return path
