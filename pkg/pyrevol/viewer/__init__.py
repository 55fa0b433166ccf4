from .matplotlibViewer import Fig, PlotWidget, plot_solution, plot_histories
