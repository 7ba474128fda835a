from maxcorr.utils.transform import out_of_range, sigmoid  # noqa
